#pragma once

#include <span>
#include <string>

#include "normsim/analysis.hpp"
#include "normsim/experiment.hpp"

namespace normsim {

/// Summary document of an experiment: metadata, per-run convergence
/// reports, per-batch checks and, for every operator run under both
/// conditions, the deterministic-vs-probabilistic comparison checks.
std::string format_summary_json(const ExperimentSpec& spec, std::span<const BatchResult> batches,
                                int convergence_window = 50, const CheckThresholds& thresholds = {});

}  // namespace normsim
