#include "normsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "normsim/random.hpp"
#include "normsim/simulation.hpp"

namespace normsim {

void ExperimentSpec::validate() const {
    if (replicates < 1) throw ConfigError("replicates: must be at least 1", 0, "replicates");
    if (parallelism < 1) throw ConfigError("parallelism: must be at least 1", 0, "parallelism");
    if (success_population_threshold < 0) {
        throw ConfigError("success_threshold: must be >= 0", 0, "success_threshold");
    }
    if (conditions.empty()) throw ConfigError("conditions: at least one condition is required", 0, "conditions");
    base.validate();
}

SimConfig ExperimentSpec::replicate_config(const ConditionSpec& condition, int replicate) const {
    SimConfig config = base;
    config.condition = condition.condition;
    config.mutation_operator = condition.op;
    config.seed = derive_substream_seed(master_seed, static_cast<std::uint64_t>(replicate));
    return config;
}

std::vector<AggregateRow> aggregate_runs(std::span<const RunResult> runs, bool extinct_as_zero) {
    std::size_t length = 0;
    for (const auto& run : runs) length = std::max(length, run.rounds.size());

    const auto columns = metric_columns();
    std::vector<AggregateRow> out(length);
    for (std::size_t r = 0; r < length; ++r) {
        std::array<double, kMetricCount> sums{};
        std::array<int, kMetricCount> counts{};
        AggregateRow& row = out[r];
        row.round = static_cast<int>(r);
        for (const auto& run : runs) {
            if (r < run.rounds.size()) {
                const RoundMetrics& m = run.rounds[r];
                row.round = m.round;
                ++row.runs;
                for (std::size_t c = 0; c < kMetricCount; ++c) {
                    if (const auto v = columns[c].get(m)) {
                        sums[c] += *v;
                        ++counts[c];
                    }
                }
            } else if (extinct_as_zero && run.termination == Termination::Extinction) {
                // Only the counters and the population are meaningful after extinction.
                ++row.runs;
                for (std::size_t c = 0; c < kMetricCount; ++c) {
                    const auto name = columns[c].name;
                    if (name == "population" || name == "births" || name == "deaths" ||
                        name == "sanction_damage" || name == "sanction_cost" || name == "total_consumed") {
                        ++counts[c];
                    }
                }
            }
        }
        for (std::size_t c = 0; c < kMetricCount; ++c) {
            if (counts[c] > 0) row.values[c] = sums[c] / counts[c];
        }
    }
    return out;
}

BatchResult run_batch(const ExperimentSpec& spec, const ConditionSpec& condition) {
    spec.validate();

    BatchResult batch;
    batch.condition = condition;
    batch.master_seed = spec.master_seed;
    batch.success_threshold = spec.success_population_threshold;
    batch.extinct_as_zero = spec.extinct_as_zero;
    batch.runs.resize(static_cast<std::size_t>(spec.replicates));

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < spec.replicates; i = next++) {
            try {
                batch.runs[static_cast<std::size_t>(i)] = run_simulation(spec.replicate_config(condition, i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int threads = std::min(spec.parallelism, spec.replicates);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    for (int i = 0; i < spec.replicates; ++i) {
        batch.replicate_ids.push_back(i);
        batch.success.push_back(batch.runs[static_cast<std::size_t>(i)].final_population() >
                                spec.success_population_threshold);
    }
    batch.mean = aggregate_runs(batch.runs, spec.extinct_as_zero);
    return batch;
}

std::vector<BatchResult> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<BatchResult> out;
    out.reserve(spec.conditions.size());
    for (const auto& c : spec.conditions) out.push_back(run_batch(spec, c));
    return out;
}

BatchResult filter_successful(const BatchResult& batch, int threshold) {
    BatchResult out;
    out.condition = batch.condition;
    out.master_seed = batch.master_seed;
    out.success_threshold = threshold;
    out.extinct_as_zero = batch.extinct_as_zero;
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        if (batch.runs[i].final_population() > threshold) {
            out.runs.push_back(batch.runs[i]);
            out.replicate_ids.push_back(batch.replicate_ids.empty() ? static_cast<int>(i) : batch.replicate_ids[i]);
            out.success.push_back(true);
        }
    }
    out.empty = out.runs.empty();
    out.mean = aggregate_runs(out.runs, out.extinct_as_zero);
    return out;
}

}  // namespace normsim
