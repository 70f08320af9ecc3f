// Per-round population statistics and whole-run summaries.
//
// Statistics of an empty population are std::nullopt ("absent") rather than
// zero, so that averages across runs never silently include dead runs.
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "normsim/config.hpp"
#include "normsim/world.hpp"

namespace normsim {

struct GeneStats {
    std::optional<double> mean;
    std::optional<double> variance;

    friend bool operator==(const GeneStats&, const GeneStats&) = default;
};

struct RoundMetrics {
    int round = 0;
    int population = 0;
    double resource = 0.0;
    std::array<GeneStats, Genome::kGeneCount> genes{};  // B, T, S, BN, TN, SN
    std::optional<double> hypocrite_fraction;
    double sanction_damage = 0.0;
    double sanction_cost = 0.0;
    int births = 0;
    int deaths = 0;
    double total_consumed = 0.0;

    /// Damage plus cost: all energy lost to sanctioning this round.
    double sanction_energy() const { return sanction_damage + sanction_cost; }

    friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

enum class Termination { Completed, Extinction };

struct RunResult {
    SimConfig config;  // includes the seed the run was drawn from
    std::vector<RoundMetrics> rounds;  // rounds[0] is the initial snapshot
    Termination termination = Termination::Completed;
    int extinction_round = -1;

    int rounds_executed() const { return static_cast<int>(rounds.size()) - 1; }
    int final_population() const { return rounds.empty() ? 0 : rounds.back().population; }

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Population variance, sum((x - mean)^2) / N. Absent for an empty input.
std::optional<double> trait_variance(std::span<const double> values);
std::optional<double> trait_mean(std::span<const double> values);

/// Fraction of agents whose genome bite size strictly exceeds their genome
/// sanction threshold. Absent for an empty population.
std::optional<double> hypocrite_fraction(std::span<const Agent> agents);

struct SanctionEnergy {
    double damage = 0.0;
    double cost = 0.0;
};

SanctionEnergy sanction_energy(const RoundAccounting& accounting);

/// Metrics of the world as it stands, with the round's accounting counters.
RoundMetrics snapshot(const World& world);

/// One output column of the per-round schema, in schema order (after "round").
struct MetricColumn {
    std::string_view name;
    std::optional<double> (*get)(const RoundMetrics&);
    bool integral;
};

std::span<const MetricColumn> metric_columns();

struct GeneConvergence {
    std::optional<double> initial_variance;
    std::optional<double> final_window_variance;  // mean over the final window
    std::optional<double> final_window_mean;      // mean of the population mean over the final window
    std::optional<double> max_abs_slope;          // largest per-round change of the mean in the final window
};

struct ConvergenceReport {
    std::array<GeneConvergence, Genome::kGeneCount> genes{};
    int window = 0;           // requested window length in rounds
    int rounds_used = 0;      // rounds actually in the final window
    bool short_run = false;   // fewer than `window` rounds were available
};

/// Convergence summary over the final `window` rounds of a run. The initial
/// snapshot is excluded from the window but provides the initial variance.
ConvergenceReport convergence_report(const RunResult& run, int window);

}  // namespace normsim
