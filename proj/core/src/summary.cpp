#include "normsim/summary.hpp"

#include <nlohmann/json.hpp>

#include "normsim/config_file.hpp"
#include "normsim/csv.hpp"
#include "normsim/random.hpp"

namespace normsim {

namespace {

using Json = nlohmann::ordered_json;

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json check_json(const CheckResult& c) {
    return Json{{"id", c.id},
                {"description", c.description},
                {"observed", std::isfinite(c.observed) ? Json(c.observed) : Json(nullptr)},
                {"threshold", c.threshold},
                {"passed", c.passed},
                {"gating", c.gating}};
}

Json convergence_json(const ConvergenceReport& report) {
    Json genes = Json::object();
    for (std::size_t g = 0; g < Genome::kGeneCount; ++g) {
        const auto& c = report.genes[g];
        genes[std::string(gene_label(g))] = Json{{"initial_variance", optional_number(c.initial_variance)},
                                                 {"final_window_variance", optional_number(c.final_window_variance)},
                                                 {"final_window_mean", optional_number(c.final_window_mean)},
                                                 {"max_abs_slope", optional_number(c.max_abs_slope)}};
    }
    return Json{{"window", report.window},
                {"rounds_used", report.rounds_used},
                {"short_run", report.short_run},
                {"genes", genes}};
}

}  // namespace

std::string format_summary_json(const ExperimentSpec& spec, std::span<const BatchResult> batches,
                                int convergence_window, const CheckThresholds& thresholds) {
    Json doc;
    doc["schema"] = "normsim-summary/1";
    doc["tool"] = "normsim " + std::string(kToolVersion);
    doc["generator"] = std::string(kGeneratorId);
    doc["master_seed"] = spec.master_seed;
    doc["replicates"] = spec.replicates;
    doc["success_threshold"] = spec.success_population_threshold;
    doc["averaging"] = spec.extinct_as_zero ? "extinct_as_zero" : "absent_aware";
    doc["config"] = config_echo(spec.base);

    Json batch_list = Json::array();
    for (const auto& b : batches) {
        Json runs = Json::array();
        for (std::size_t i = 0; i < b.runs.size(); ++i) {
            const auto& run = b.runs[i];
            runs.push_back(Json{
                {"replicate", b.replicate_ids.empty() ? static_cast<int>(i) : b.replicate_ids[i]},
                {"seed", run.config.seed},
                {"termination", run.termination == Termination::Completed ? "completed" : "extinction"},
                {"extinction_round", run.termination == Termination::Extinction ? Json(run.extinction_round)
                                                                                : Json(nullptr)},
                {"final_population", run.final_population()},
                {"success", i < b.success.size() && b.success[i]},
                {"convergence", convergence_json(convergence_report(run, convergence_window))},
            });
        }
        Json checks = Json::array();
        for (const auto& c : batch_checks(b, thresholds)) checks.push_back(check_json(c));
        batch_list.push_back(Json{{"condition", std::string(to_string(b.condition.condition))},
                                  {"mutation_operator", std::string(to_string(b.condition.op))},
                                  {"runs", runs},
                                  {"checks", checks}});
    }
    doc["batches"] = batch_list;

    Json comparisons = Json::array();
    for (const auto op : {MutationOperator::Gaussian, MutationOperator::LegacySetToOne}) {
        const BatchResult* det = nullptr;
        const BatchResult* prob = nullptr;
        for (const auto& b : batches) {
            if (b.condition.op != op) continue;
            if (b.condition.condition == Condition::Deterministic && !det) det = &b;
            if (b.condition.condition == Condition::Probabilistic && !prob) prob = &b;
        }
        if (!det || !prob) continue;
        Json checks = Json::array();
        for (const auto& c : comparison_checks(*det, *prob, thresholds)) checks.push_back(check_json(c));
        comparisons.push_back(Json{{"mutation_operator", std::string(to_string(op))}, {"checks", checks}});
    }
    doc["comparisons"] = comparisons;
    return doc.dump(2) + "\n";
}

}  // namespace normsim
