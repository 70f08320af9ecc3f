// Ensemble statistics over replicate batches: norm emergence, population
// and hypocrisy gaps, sanction dynamics and noise retention.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normsim/experiment.hpp"

namespace normsim {

/// Median of the values; absent for an empty input.
std::optional<double> median(std::vector<double> values);

/// Population standard deviation; absent for an empty input.
std::optional<double> population_sd(std::span<const double> values);

/// Mean of column `column` over the last `window` executed rounds of `run`.
std::optional<double> final_window_mean(const RunResult& run, std::string_view column, int window);

/// Maximum of column `column` over rounds 1..`rounds` of `run`.
std::optional<double> early_peak(const RunResult& run, std::string_view column, int rounds);

struct CheckResult {
    std::string id;
    std::string description;
    double observed = 0.0;
    double threshold = 0.0;
    bool passed = false;
    bool gating = true;
};

struct CheckThresholds {
    int final_window = 50;              // rounds used for final-window means
    double variance_ratio = 0.5;        // final variance < ratio * initial variance
    double variance_runs_fraction = 0.8;
    double min_cross_run_sd = 0.02;
    double population_factor = 10.0;
    double max_deterministic_hypocrisy = 0.02;
    double min_probabilistic_hypocrisy = 0.01;
    double max_probabilistic_hypocrisy = 0.2;
    int sanction_final_window = 100;
    int sanction_early_rounds = 100;
    double sanction_decline_ratio = 0.25;
    double sanction_runs_fraction = 0.8;
    double min_final_noise = 0.1;
    double noise_runs_fraction = 0.7;
};

/// Fraction of runs whose final-window bite variance is below ratio x initial variance.
CheckResult check_variance_reduction(const BatchResult& deterministic, const CheckThresholds& t = {});

/// Spread across runs of the final-window mean bite size.
CheckResult check_norm_arbitrariness(const BatchResult& deterministic, const CheckThresholds& t = {});

/// Median final population of the deterministic batch over the probabilistic one.
CheckResult check_population_gap(const BatchResult& deterministic, const BatchResult& probabilistic,
                                 const CheckThresholds& t = {});

/// Median final-window hypocrite fractions, both conditions.
std::vector<CheckResult> check_hypocrisy_gap(const BatchResult& deterministic, const BatchResult& probabilistic,
                                             const CheckThresholds& t = {});

/// Share of deterministic runs whose late sanction energy fell below a quarter of the early peak.
CheckResult check_sanction_decline(const BatchResult& deterministic, const CheckThresholds& t = {});

/// Probabilistic final-window sanction energy exceeds deterministic (medians).
CheckResult check_perpetual_punishment(const BatchResult& deterministic, const BatchResult& probabilistic,
                                       const CheckThresholds& t = {});

/// Share of surviving runs where final mean BN, TN and SN all stay above the floor.
CheckResult check_noise_retention(const BatchResult& probabilistic, const CheckThresholds& t = {});

/// Informative: probabilistic median final mean bite size >= deterministic.
CheckResult check_bite_size_direction(const BatchResult& deterministic, const BatchResult& probabilistic,
                                      const CheckThresholds& t = {});

/// Checks meaningful for a single batch given its condition and operator.
std::vector<CheckResult> batch_checks(const BatchResult& batch, const CheckThresholds& t = {});

/// Checks comparing a deterministic and a probabilistic batch under the same operator.
std::vector<CheckResult> comparison_checks(const BatchResult& deterministic, const BatchResult& probabilistic,
                                           const CheckThresholds& t = {});

}  // namespace normsim
