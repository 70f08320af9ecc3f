#include "normsim/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace normsim {

std::optional<double> trait_mean(std::span<const double> values) {
    if (values.empty()) {
        return std::nullopt;
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

std::optional<double> trait_variance(std::span<const double> values) {
    const auto mean = trait_mean(values);
    if (!mean) {
        return std::nullopt;
    }
    double ss = 0.0;
    for (double v : values) {
        const double d = v - *mean;
        ss += d * d;
    }
    return ss / static_cast<double>(values.size());
}

std::optional<double> hypocrite_fraction(std::span<const Agent> agents) {
    if (agents.empty()) {
        return std::nullopt;
    }
    const auto count = std::count_if(agents.begin(), agents.end(), [](const Agent& a) {
        return a.genome.bite_size > a.genome.sanction_threshold;
    });
    return static_cast<double>(count) / static_cast<double>(agents.size());
}

SanctionEnergy sanction_energy(const RoundAccounting& accounting) {
    return {accounting.sanction_damage, accounting.sanction_cost};
}

RoundMetrics snapshot(const World& world) {
    RoundMetrics m;
    m.round = world.round;
    m.population = static_cast<int>(world.agents.size());
    m.resource = world.resource;
    m.sanction_damage = world.accounting.sanction_damage;
    m.sanction_cost = world.accounting.sanction_cost;
    m.births = world.accounting.births;
    m.deaths = world.accounting.deaths;
    m.total_consumed = world.accounting.consumed;
    m.hypocrite_fraction = hypocrite_fraction(world.agents);

    std::vector<double> column(world.agents.size());
    for (std::size_t g = 0; g < Genome::kGeneCount; ++g) {
        for (std::size_t i = 0; i < world.agents.size(); ++i) {
            column[i] = world.agents[i].genome.gene(g);
        }
        m.genes[g].mean = trait_mean(column);
        m.genes[g].variance = trait_variance(column);
    }
    return m;
}

namespace {

template <std::size_t G>
std::optional<double> gene_mean(const RoundMetrics& m) { return m.genes[G].mean; }
template <std::size_t G>
std::optional<double> gene_var(const RoundMetrics& m) { return m.genes[G].variance; }

constexpr std::array<MetricColumn, 20> kColumns{{
    {"population", [](const RoundMetrics& m) -> std::optional<double> { return m.population; }, true},
    {"resource", [](const RoundMetrics& m) -> std::optional<double> { return m.resource; }, false},
    {"mean_B", gene_mean<0>, false},
    {"var_B", gene_var<0>, false},
    {"mean_T", gene_mean<1>, false},
    {"var_T", gene_var<1>, false},
    {"mean_S", gene_mean<2>, false},
    {"var_S", gene_var<2>, false},
    {"mean_BN", gene_mean<3>, false},
    {"var_BN", gene_var<3>, false},
    {"mean_TN", gene_mean<4>, false},
    {"var_TN", gene_var<4>, false},
    {"mean_SN", gene_mean<5>, false},
    {"var_SN", gene_var<5>, false},
    {"hypocrite_fraction", [](const RoundMetrics& m) { return m.hypocrite_fraction; }, false},
    {"sanction_damage", [](const RoundMetrics& m) -> std::optional<double> { return m.sanction_damage; }, false},
    {"sanction_cost", [](const RoundMetrics& m) -> std::optional<double> { return m.sanction_cost; }, false},
    {"births", [](const RoundMetrics& m) -> std::optional<double> { return m.births; }, true},
    {"deaths", [](const RoundMetrics& m) -> std::optional<double> { return m.deaths; }, true},
    {"total_consumed", [](const RoundMetrics& m) -> std::optional<double> { return m.total_consumed; }, false},
}};

}  // namespace

std::span<const MetricColumn> metric_columns() { return kColumns; }

ConvergenceReport convergence_report(const RunResult& run, int window) {
    ConvergenceReport report;
    report.window = window;
    if (run.rounds.empty()) {
        report.short_run = true;
        return report;
    }

    const auto& rows = run.rounds;
    const std::size_t executed = rows.size() - 1;
    const std::size_t want = static_cast<std::size_t>(std::max(window, 1));
    report.short_run = executed < want;
    // Window covers executed rounds; a run that executed nothing falls back to its snapshot.
    const std::size_t first = executed == 0 ? 0 : rows.size() - std::min(want, executed);
    report.rounds_used = static_cast<int>(rows.size() - first);

    for (std::size_t g = 0; g < Genome::kGeneCount; ++g) {
        auto& out = report.genes[g];
        out.initial_variance = rows.front().genes[g].variance;

        double var_sum = 0.0;
        double mean_sum = 0.0;
        int var_n = 0;
        int mean_n = 0;
        std::optional<double> max_slope;
        const RoundMetrics* prev = nullptr;
        for (std::size_t r = first; r < rows.size(); ++r) {
            const auto& stats = rows[r].genes[g];
            if (stats.variance) {
                var_sum += *stats.variance;
                ++var_n;
            }
            if (stats.mean) {
                mean_sum += *stats.mean;
                ++mean_n;
                if (prev != nullptr && prev->round != rows[r].round) {
                    const double slope = std::abs(*stats.mean - *prev->genes[g].mean) /
                                         static_cast<double>(rows[r].round - prev->round);
                    max_slope = std::max(max_slope.value_or(0.0), slope);
                }
                prev = &rows[r];
            }
        }
        if (var_n > 0) out.final_window_variance = var_sum / var_n;
        if (mean_n > 0) out.final_window_mean = mean_sum / mean_n;
        out.max_abs_slope = mean_n > 0 ? std::optional<double>(max_slope.value_or(0.0)) : std::nullopt;
    }
    return report;
}

}  // namespace normsim
