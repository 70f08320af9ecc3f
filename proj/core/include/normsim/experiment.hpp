// Replicate batches per (condition, operator) pair, run in parallel with
// per-replicate substreams, and their cross-run aggregates.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "normsim/config.hpp"
#include "normsim/metrics.hpp"

namespace normsim {

struct ConditionSpec {
    Condition condition = Condition::Deterministic;
    MutationOperator op = MutationOperator::Gaussian;

    friend bool operator==(const ConditionSpec&, const ConditionSpec&) = default;
};

struct ExperimentSpec {
    SimConfig base;
    int replicates = 1;
    std::uint64_t master_seed = 0;
    int success_population_threshold = 1000;
    std::vector<ConditionSpec> conditions;
    int parallelism = 1;
    /// Count runs after their extinction as population 0 instead of dropping them from means.
    bool extinct_as_zero = false;

    void validate() const;

    /// Configuration of one replicate: base settings, the given condition,
    /// and the replicate's derived seed. Replicate i of every condition
    /// shares a seed.
    SimConfig replicate_config(const ConditionSpec& condition, int replicate) const;
};

inline constexpr std::size_t kMetricCount = 20;

/// Cross-run mean of every metric column at one round.
struct AggregateRow {
    int round = 0;
    int runs = 0;  // runs contributing at this round
    std::array<std::optional<double>, kMetricCount> values{};  // metric_columns() order

    friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

struct BatchResult {
    ConditionSpec condition;
    std::uint64_t master_seed = 0;
    std::vector<RunResult> runs;
    std::vector<int> replicate_ids;  // replicate index of each run
    std::vector<bool> success;       // final population > success_threshold
    std::vector<AggregateRow> mean;
    int success_threshold = 1000;
    bool extinct_as_zero = false;
    bool empty = false;  // set when a filter removed every run

    friend bool operator==(const BatchResult&, const BatchResult&) = default;
};

/// Absent-aware per-round means: at round r only runs that recorded round r
/// (and, per column, have a value) contribute.
std::vector<AggregateRow> aggregate_runs(std::span<const RunResult> runs, bool extinct_as_zero);

/// All replicates of one condition. Output does not depend on `spec.parallelism`.
BatchResult run_batch(const ExperimentSpec& spec, const ConditionSpec& condition);

/// One BatchResult per entry of `spec.conditions`, in order.
std::vector<BatchResult> run_experiment(const ExperimentSpec& spec);

/// Keeps runs whose final population strictly exceeds `threshold`.
BatchResult filter_successful(const BatchResult& batch, int threshold);

}  // namespace normsim
