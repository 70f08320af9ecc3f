#include "normsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace normsim {

namespace {

std::optional<double> column_value(const RoundMetrics& m, std::string_view column) {
    if (column == "sanction_energy") {
        return m.sanction_energy();
    }
    for (const auto& c : metric_columns()) {
        if (c.name == column) return c.get(m);
    }
    throw std::invalid_argument("unknown metric column: " + std::string(column));
}

std::vector<double> collect(const BatchResult& batch, auto&& per_run) {
    std::vector<double> out;
    for (const auto& run : batch.runs) {
        if (const std::optional<double> v = per_run(run)) out.push_back(*v);
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string batch_label(const BatchResult& b) {
    return std::string(to_string(b.condition.condition)) + "/" + std::string(to_string(b.condition.op));
}

}  // namespace

std::optional<double> median(std::vector<double> values) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::optional<double> population_sd(std::span<const double> values) {
    if (values.empty()) return std::nullopt;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

std::optional<double> final_window_mean(const RunResult& run, std::string_view column, int window) {
    if (run.rounds.size() < 2 || window <= 0) return std::nullopt;
    const std::size_t n = std::min(run.rounds.size() - 1, static_cast<std::size_t>(window));
    double sum = 0.0;
    int count = 0;
    for (std::size_t r = run.rounds.size() - n; r < run.rounds.size(); ++r) {
        if (const auto v = column_value(run.rounds[r], column)) {
            sum += *v;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / count;
}

std::optional<double> early_peak(const RunResult& run, std::string_view column, int rounds) {
    std::optional<double> peak;
    for (std::size_t r = 1; r < run.rounds.size() && static_cast<int>(r) <= rounds; ++r) {
        if (const auto v = column_value(run.rounds[r], column)) {
            peak = std::max(peak.value_or(*v), *v);
        }
    }
    return peak;
}

CheckResult check_variance_reduction(const BatchResult& det, const CheckThresholds& t) {
    int reduced = 0;
    for (const auto& run : det.runs) {
        const auto initial = run.rounds.empty() ? std::nullopt : run.rounds.front().genes[0].variance;
        const auto late = final_window_mean(run, "var_B", t.final_window);
        if (initial && late && *late < t.variance_ratio * *initial) ++reduced;
    }
    const double fraction = det.runs.empty() ? 0.0 : static_cast<double>(reduced) / det.runs.size();
    return {"variance_reduction",
            batch_label(det) + ": share of runs whose final-window bite variance < " +
                num(t.variance_ratio) + " x initial",
            fraction, t.variance_runs_fraction, fraction >= t.variance_runs_fraction, true};
}

CheckResult check_norm_arbitrariness(const BatchResult& det, const CheckThresholds& t) {
    const auto means = collect(det, [&](const RunResult& r) { return final_window_mean(r, "mean_B", t.final_window); });
    const double sd = population_sd(means).value_or(0.0);
    return {"norm_arbitrariness", batch_label(det) + ": cross-run sd of final-window mean bite size", sd,
            t.min_cross_run_sd, sd > t.min_cross_run_sd, true};
}

CheckResult check_population_gap(const BatchResult& det, const BatchResult& prob, const CheckThresholds& t) {
    const auto finals = [](const BatchResult& b) {
        return collect(b, [](const RunResult& r) -> std::optional<double> { return r.final_population(); });
    };
    const double det_median = median(finals(det)).value_or(0.0);
    const double prob_median = median(finals(prob)).value_or(0.0);
    const double ratio = prob_median > 0.0 ? det_median / prob_median
                                           : (det_median > 0.0 ? INFINITY : 0.0);
    return {"population_gap",
            "median final population " + batch_label(det) + " / " + batch_label(prob) + " (" +
                num(det_median) + " / " + num(prob_median) + ")",
            ratio, t.population_factor, ratio >= t.population_factor, true};
}

std::vector<CheckResult> check_hypocrisy_gap(const BatchResult& det, const BatchResult& prob,
                                             const CheckThresholds& t) {
    const auto med = [&](const BatchResult& b) {
        return median(collect(b, [&](const RunResult& r) {
                   return final_window_mean(r, "hypocrite_fraction", t.final_window);
               })).value_or(NAN);
    };
    const double d = med(det);
    const double p = med(prob);
    return {
        {"hypocrisy_order", "median final-window hypocrite fraction deterministic (" + num(d) +
                                ") < probabilistic (" + num(p) + ")",
         p - d, 0.0, d < p, true},
        {"hypocrisy_deterministic_low", batch_label(det) + ": median final-window hypocrite fraction", d,
         t.max_deterministic_hypocrisy, d < t.max_deterministic_hypocrisy, true},
        {"hypocrisy_probabilistic_band",
         batch_label(prob) + ": median final-window hypocrite fraction within [" +
             num(t.min_probabilistic_hypocrisy) + ", " + num(t.max_probabilistic_hypocrisy) +
             "]",
         p, t.min_probabilistic_hypocrisy, p >= t.min_probabilistic_hypocrisy && p <= t.max_probabilistic_hypocrisy,
         true},
    };
}

CheckResult check_sanction_decline(const BatchResult& det, const CheckThresholds& t) {
    int declined = 0;
    for (const auto& run : det.runs) {
        const auto peak = early_peak(run, "sanction_energy", t.sanction_early_rounds);
        const auto late = final_window_mean(run, "sanction_energy", t.sanction_final_window);
        if (peak && late && *late < t.sanction_decline_ratio * *peak) ++declined;
    }
    const double fraction = det.runs.empty() ? 0.0 : static_cast<double>(declined) / det.runs.size();
    return {"sanction_decline",
            batch_label(det) + ": share of runs whose final-window sanction energy < " +
                num(t.sanction_decline_ratio) + " x early peak",
            fraction, t.sanction_runs_fraction, fraction >= t.sanction_runs_fraction, true};
}

CheckResult check_perpetual_punishment(const BatchResult& det, const BatchResult& prob, const CheckThresholds& t) {
    const auto med = [&](const BatchResult& b) {
        return median(collect(b, [&](const RunResult& r) {
                   return final_window_mean(r, "sanction_energy", t.sanction_final_window);
               })).value_or(0.0);
    };
    const double d = med(det);
    const double p = med(prob);
    return {"perpetual_punishment",
            "median final-window sanction energy probabilistic (" + num(p) + ") > deterministic (" +
                num(d) + ")",
            p - d, 0.0, p > d, true};
}

CheckResult check_noise_retention(const BatchResult& prob, const CheckThresholds& t) {
    int surviving = 0;
    int retained = 0;
    for (const auto& run : prob.runs) {
        if (run.termination != Termination::Completed || run.rounds.empty()) continue;
        ++surviving;
        const auto& last = run.rounds.back();
        bool all = true;
        for (std::size_t g = 3; g < Genome::kGeneCount; ++g) {
            all = all && last.genes[g].mean && *last.genes[g].mean > t.min_final_noise;
        }
        if (all) ++retained;
    }
    const double fraction = surviving == 0 ? 0.0 : static_cast<double>(retained) / surviving;
    return {"noise_retention",
            batch_label(prob) + ": share of " + std::to_string(surviving) +
                " surviving runs with final mean BN, TN, SN all > " + num(t.min_final_noise),
            fraction, t.noise_runs_fraction, surviving > 0 && fraction >= t.noise_runs_fraction, true};
}

CheckResult check_bite_size_direction(const BatchResult& det, const BatchResult& prob, const CheckThresholds& t) {
    const auto med = [&](const BatchResult& b) {
        return median(collect(b, [&](const RunResult& r) { return final_window_mean(r, "mean_B", 1); }))
            .value_or(NAN);
    };
    (void)t;
    const double d = med(det);
    const double p = med(prob);
    return {"bite_size_direction",
            "median final mean bite size probabilistic (" + num(p) + ") >= deterministic (" +
                num(d) + ")",
            p - d, 0.0, p >= d, false};
}

std::vector<CheckResult> batch_checks(const BatchResult& batch, const CheckThresholds& t) {
    std::vector<CheckResult> out;
    if (batch.runs.empty()) return out;
    if (batch.condition.condition == Condition::Deterministic) {
        out.push_back(check_variance_reduction(batch, t));
        out.push_back(check_norm_arbitrariness(batch, t));
        out.push_back(check_sanction_decline(batch, t));
    } else if (batch.condition.op == MutationOperator::Gaussian) {
        out.push_back(check_noise_retention(batch, t));
    }
    return out;
}

std::vector<CheckResult> comparison_checks(const BatchResult& det, const BatchResult& prob,
                                           const CheckThresholds& t) {
    std::vector<CheckResult> out;
    if (det.runs.empty() || prob.runs.empty()) return out;
    out.push_back(check_population_gap(det, prob, t));
    for (auto& c : check_hypocrisy_gap(det, prob, t)) out.push_back(std::move(c));
    out.push_back(check_perpetual_punishment(det, prob, t));
    out.push_back(check_bite_size_direction(det, prob, t));
    return out;
}

}  // namespace normsim
