// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fails.
// Criterion 11 carries an informative check that never affects the verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "normsim/normsim.hpp"
#include "oracles.hpp"

using namespace normsim;

namespace {

// Tolerances and batch sizes.
constexpr double kTraceTolerance = 1e-12;
constexpr double kLedgerRelTolerance = 1e-9;
constexpr int kReplicates = 40;
constexpr int kRounds = 500;
constexpr int kNoiseRounds = 1000;
constexpr std::uint64_t kMasterSeed = 20240601;
constexpr int kDeterminismReplicates = 8;
constexpr int kMicroSamples = 100000;
constexpr double kTriggerRate = 0.1;
constexpr double kTriggerTolerance = 0.003;
constexpr double kStandardErrors = 3.0;
constexpr double kShuffleTolerance = 0.01;

struct Line {
    int id;
    bool passed;
    std::string detail;
};

std::vector<Line> results;

void report(int id, bool passed, const std::string& detail) {
    results.push_back({id, passed, detail});
    std::fprintf(stderr, "criterion %d done\n", id);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

std::string describe(const CheckResult& c) {
    return c.id + " " + c.description + fmt(" observed %.6g, threshold %.6g", c.observed, c.threshold);
}

// ---- 1 -------------------------------------------------------------------

void single_agent_trace() {
    SimConfig c;
    c.initial_agents = 1;
    c.max_rounds = 1;
    c.mutation_probability = 0.0;

    const auto world = [] {
        World w;
        w.resource = 1000.0;
        Agent a;
        a.genome.bite_size = 0.5;
        a.genome.sanction_threshold = 1.0;
        a.genome.sanction_strength = 0.5;
        a.energy = 10.0;
        w.agents = {a};
        w.next_agent_id = 1;
        return w;
    };

    SimConfig no_split = c;
    no_split.reproduction_threshold = 1e9;
    World pre = world();
    RandomStream rng_pre(1);
    step_round(pre, no_split, rng_pre);
    const double pre_energy = pre.agents.at(0).energy;

    World w = world();
    RandomStream rng(1);
    step_round(w, c, rng);
    const bool two = w.agents.size() == 2;
    const double e0 = two ? w.agents[0].energy : NAN;
    const double e1 = two ? w.agents[1].energy : NAN;

    const bool ok = std::abs(pre_energy - 10.49) <= kTraceTolerance && two &&
                    std::abs(e0 - 5.245) <= kTraceTolerance && std::abs(e1 - 5.245) <= kTraceTolerance &&
                    std::abs(w.resource - 1099.5) <= kTraceTolerance;
    report(1, ok,
           fmt("single-agent round: pre-split %.15g (10.49), split %.15g/%.15g (5.245), resource %.15g (1099.5), "
               "tol %.0e",
               pre_energy, e0, e1, w.resource, kTraceTolerance));
}

// ---- 2 -------------------------------------------------------------------

double rel_err(double actual, double expected) {
    return std::abs(actual - expected) / std::max(1.0, std::abs(expected));
}

void conservation_ledgers() {
    double worst = 0.0;
    int rounds_checked = 0;
    std::uint64_t seed = 100;
    for (auto cond : {Condition::Deterministic, Condition::Probabilistic}) {
        for (auto op : {MutationOperator::Gaussian, MutationOperator::LegacySetToOne}) {
            SimConfig c;
            c.condition = cond;
            c.mutation_operator = op;
            c.max_rounds = kRounds;
            c.seed = seed++;
            RandomStream rng(c.seed);
            World w = init_world(c, rng);
            while (w.round < c.max_rounds && !w.extinct()) {
                const double resource_before = w.resource;
                const double energy_before = w.total_energy();
                step_round(w, c, rng);
                const auto& a = w.accounting;
                worst = std::max(worst, rel_err(w.resource, resource_before - a.consumed + c.regrowth_per_round));
                const double flows = energy_before + a.consumed - a.metabolism_paid - a.sanction_damage -
                                     a.sanction_cost - a.removed_energy;
                const double scale =
                    std::max({1.0, std::abs(energy_before), a.consumed, a.sanction_damage, a.removed_energy});
                worst = std::max(worst, std::abs(w.total_energy() - flows) / scale);
                ++rounds_checked;
            }
        }
    }
    report(2, worst <= kLedgerRelTolerance,
           fmt("resource and energy ledgers over %d rounds of 4 seeded %d-round runs: worst relative error %.3g "
               "(tol %.0e)",
               rounds_checked, kRounds, worst, kLedgerRelTolerance));
}

// ---- 3 -------------------------------------------------------------------

std::map<std::string, std::string> bundle(const ExperimentSpec& spec) {
    std::map<std::string, std::string> files;
    const auto batches = run_experiment(spec);
    for (const auto& b : batches) {
        for (std::size_t i = 0; i < b.runs.size(); ++i) {
            files[run_csv_name(b.condition, b.replicate_ids[i])] =
                format_run_csv(b.runs[i], {spec.master_seed, b.replicate_ids[i]});
        }
        files[aggregate_csv_name(b.condition)] = format_aggregate_csv(b, spec);
        const BatchResult ok = filter_successful(b, spec.success_population_threshold);
        files["successful_" + aggregate_csv_name(b.condition)] = format_aggregate_csv(ok, spec);
        files[aggregate_csv_name(b.condition) + ".svg"] = render_svg(batch_panels(b), "batch");
    }
    files["summary.json"] = format_summary_json(spec, batches);
    return files;
}

void determinism() {
    ExperimentSpec spec;
    spec.base.max_rounds = kRounds;
    spec.replicates = kDeterminismReplicates;
    spec.master_seed = kMasterSeed + 3;
    spec.conditions = {{Condition::Deterministic, MutationOperator::Gaussian},
                       {Condition::Probabilistic, MutationOperator::Gaussian}};
    spec.parallelism = 1;
    const auto a = bundle(spec);
    const auto b = bundle(spec);
    spec.parallelism = 8;
    const auto c = bundle(spec);
    std::size_t bytes = 0;
    for (const auto& [name, text] : a) bytes += text.size();
    report(3, a == b && a == c,
           fmt("%zu files (%zu bytes): repeat %s, parallelism 1 vs 8 %s", a.size(), bytes,
               a == b ? "identical" : "DIFFERENT", a == c ? "identical" : "DIFFERENT"));
}

// ---- 4 -------------------------------------------------------------------

void special_case_equivalence() {
    int identical = 0;
    int total = 0;
    for (auto op : {MutationOperator::Gaussian, MutationOperator::LegacySetToOne}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            SimConfig det;
            det.mutation_operator = op;
            det.max_rounds = kRounds;
            det.seed = seed;
            SimConfig prob = det;
            prob.condition = Condition::Probabilistic;
            prob.noise_enabled = {false, false, false};
            const RunResult a = run_simulation(det);
            const RunResult b = run_simulation(prob);
            ++total;
            if (a.rounds == b.rounds && a.termination == b.termination && a.extinction_round == b.extinction_round) {
                ++identical;
            }
        }
    }
    report(4, identical == total,
           fmt("deterministic vs probabilistic with noise forced to 0: %d/%d trajectories identical", identical,
               total));
}

// ---- 5-11 ----------------------------------------------------------------

const BatchResult& find(const std::vector<BatchResult>& batches, Condition c, MutationOperator op) {
    for (const auto& b : batches) {
        if (b.condition.condition == c && b.condition.op == op) return b;
    }
    throw std::logic_error("batch missing");
}

void ensemble_criteria() {
    ExperimentSpec spec;
    spec.base.max_rounds = kRounds;
    spec.replicates = kReplicates;
    spec.master_seed = kMasterSeed;
    spec.parallelism = 1;
    spec.conditions = {{Condition::Deterministic, MutationOperator::Gaussian},
                       {Condition::Probabilistic, MutationOperator::Gaussian},
                       {Condition::Deterministic, MutationOperator::LegacySetToOne},
                       {Condition::Probabilistic, MutationOperator::LegacySetToOne}};
    const auto batches = run_experiment(spec);
    const auto& det_g = find(batches, Condition::Deterministic, MutationOperator::Gaussian);
    const auto& prob_g = find(batches, Condition::Probabilistic, MutationOperator::Gaussian);
    const auto& det_l = find(batches, Condition::Deterministic, MutationOperator::LegacySetToOne);
    const auto& prob_l = find(batches, Condition::Probabilistic, MutationOperator::LegacySetToOne);
    const CheckThresholds t;

    const auto v = check_variance_reduction(det_g, t);
    report(5, v.passed, describe(v) + fmt(" [%d replicates x %d rounds]", kReplicates, kRounds));

    const auto arb = check_norm_arbitrariness(det_g, t);
    report(6, arb.passed, describe(arb));

    const auto gap = check_population_gap(det_l, prob_l, t);
    report(7, gap.passed, describe(gap));

    const auto hyp = check_hypocrisy_gap(det_l, prob_l, t);
    std::string hyp_text;
    bool hyp_ok = true;
    for (const auto& h : hyp) {
        hyp_ok = hyp_ok && h.passed;
        hyp_text += (hyp_text.empty() ? "" : "; ") + std::string(h.passed ? "ok " : "FAILED ") + describe(h);
    }
    report(8, hyp_ok, hyp_text);

    const auto decline = check_sanction_decline(det_g, t);
    const auto perpetual = check_perpetual_punishment(det_g, prob_g, t);
    report(9, decline.passed && perpetual.passed,
           std::string(decline.passed ? "ok " : "FAILED ") + describe(decline) + "; " +
               (perpetual.passed ? "ok " : "FAILED ") + describe(perpetual));

    // 11: operators on otherwise identical specs.
    bool complete = true;
    for (const auto* b : {&det_g, &prob_g, &det_l, &prob_l}) {
        complete = complete && static_cast<int>(b->runs.size()) == kReplicates;
        for (const auto& run : b->runs) {
            const bool finished = run.termination == Termination::Completed ? run.rounds_executed() == kRounds
                                                                             : run.extinction_round >= 0;
            complete = complete && finished && run.config.mutation_operator == b->condition.op;
        }
    }
    const std::string gauss_csv = format_run_csv(det_g.runs.front());
    const std::string legacy_csv = format_run_csv(det_l.runs.front());
    const bool labelled = aggregate_csv_name(det_g.condition) != aggregate_csv_name(det_l.condition) &&
                          run_csv_name(det_g.condition, 0) != run_csv_name(det_l.condition, 0) &&
                          gauss_csv.find("# mutation_operator: gaussian\n") != std::string::npos &&
                          legacy_csv.find("# mutation_operator: legacy_set_to_one\n") != std::string::npos;
    const auto dir = check_bite_size_direction(det_l, prob_l, t);
    report(11, complete && labelled,
           fmt("both operators completed %d replicates x %d rounds per condition: %s; outputs labelled distinctly: "
               "%s; informative, not gating: legacy ",
               kReplicates, kRounds, complete ? "yes" : "NO", labelled ? "yes" : "NO") +
               describe(dir) + (dir.passed ? " (holds)" : " (does not hold)"));

    // 10: longer probabilistic Gaussian batch.
    ExperimentSpec noise = spec;
    noise.base.max_rounds = kNoiseRounds;
    noise.conditions = {{Condition::Probabilistic, MutationOperator::Gaussian}};
    const BatchResult long_prob = run_batch(noise, noise.conditions.front());
    const auto retained = check_noise_retention(long_prob, t);
    report(10, retained.passed, describe(retained) + fmt(" [%d replicates x %d rounds]", kReplicates, kNoiseRounds));
}

// ---- 12 ------------------------------------------------------------------

void micro_oracles() {
    // Trigger rate over 1e5 genes.
    MutationParams p;
    p.active = {true, false, false, false, false, false};
    RandomStream rng(kMasterSeed + 12);
    Genome g;
    g.bite_size = 0.5;
    int changed = 0;
    for (int i = 0; i < kMicroSamples; ++i) changed += mutate_genome(g, p, rng).bite_size != 0.5;
    const double rate = static_cast<double>(changed) / kMicroSamples;
    const bool rate_ok = std::abs(rate - kTriggerRate) <= kTriggerTolerance;

    // Clamped Gaussian behaviour draw vs numeric integration.
    Genome s;
    s.sanction_strength = 0.9;
    s.strength_noise = 0.3;
    const double expected = oracle::clamped_normal_moment(0.9, 0.3, 1);
    const double sd = std::sqrt(oracle::clamped_normal_moment(0.9, 0.3, 2) - expected * expected);
    double sum = 0.0;
    for (int i = 0; i < kMicroSamples; ++i) sum += draw_effective_behavior(s, Trait::Strength, true, rng);
    const double mean = sum / kMicroSamples;
    const double se = sd / std::sqrt(static_cast<double>(kMicroSamples));
    const bool mean_ok = std::abs(mean - expected) <= kStandardErrors * se;

    // Shuffle of 3 items.
    std::map<std::array<int, 3>, int> counts;
    for (int i = 0; i < kMicroSamples; ++i) {
        std::array<int, 3> items{0, 1, 2};
        rng.shuffle(std::span<int>(items));
        ++counts[items];
    }
    double worst = counts.size() == 6 ? 0.0 : 1.0;
    for (const auto& [perm, n] : counts) {
        worst = std::max(worst, std::abs(static_cast<double>(n) / kMicroSamples - 1.0 / 6.0));
    }
    const bool shuffle_ok = worst <= kShuffleTolerance;

    report(12, rate_ok && mean_ok && shuffle_ok,
           fmt("trigger rate %.5f (0.1 +/- %.3f) %s; clamped mean %.6f vs oracle %.6f, |diff| %.2g SE %s; shuffle "
               "worst deviation %.4f (<= %.2f) %s",
               rate, kTriggerTolerance, rate_ok ? "ok" : "FAILED", mean, expected, std::abs(mean - expected) / se,
               mean_ok ? "ok" : "FAILED", worst, kShuffleTolerance, shuffle_ok ? "ok" : "FAILED"));
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    single_agent_trace();
    conservation_ledgers();
    determinism();
    special_case_equivalence();
    ensemble_criteria();
    micro_oracles();

    std::sort(results.begin(), results.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
    int failed = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %d: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.detail.c_str());
        failed += !r.passed;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("acceptance: %d of %zu criteria failed, %.1f s\n", failed, results.size(), secs);
    return failed == 0 ? 0 : 1;
}
