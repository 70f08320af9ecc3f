#include "normsim/config.hpp"

#include <cmath>

namespace normsim {

std::string_view to_string(Condition c) {
    return c == Condition::Deterministic ? "deterministic" : "probabilistic";
}

std::string_view to_string(MutationOperator op) {
    return op == MutationOperator::Gaussian ? "gaussian" : "legacy_set_to_one";
}

std::optional<Condition> parse_condition(std::string_view text) {
    if (text == "deterministic") return Condition::Deterministic;
    if (text == "probabilistic") return Condition::Probabilistic;
    return std::nullopt;
}

std::optional<MutationOperator> parse_operator(std::string_view text) {
    if (text == "gaussian") return MutationOperator::Gaussian;
    if (text == "legacy_set_to_one") return MutationOperator::LegacySetToOne;
    return std::nullopt;
}

namespace {

void require(bool ok, const char* key, const std::string& message) {
    if (!ok) {
        throw ConfigError(std::string(key) + ": " + message, 0, key);
    }
}

bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

void check_unit_range(const Range& r, const char* key) {
    require(std::isfinite(r.lo) && std::isfinite(r.hi), key, "bounds must be finite");
    require(r.lo <= r.hi, key, "lower bound exceeds upper bound");
    require(r.lo >= 0.0 && r.hi <= 1.0, key, "range must lie within [0, 1]");
}

}  // namespace

void SimConfig::validate() const {
    require(initial_agents > 0, "initial_agents", "must be at least 1");
    require(finite_non_negative(initial_resource), "initial_resource", "must be a finite value >= 0");
    require(std::isfinite(initial_energy), "initial_energy", "must be finite");
    check_unit_range(trait_init_range, "trait_init_range");
    check_unit_range(noise_init_range, "noise_init_range");
    require(finite_non_negative(regrowth_per_round), "regrowth_per_round", "must be a finite value >= 0");
    require(finite_non_negative(metabolism_per_round), "metabolism_per_round", "must be a finite value >= 0");
    require(finite_non_negative(sanction_cost_factor), "sanction_cost_factor", "must be a finite value >= 0");
    require(observation_window >= 0, "observation_window", "must be >= 0");
    require(std::isfinite(reproduction_threshold), "reproduction_threshold", "must be finite");
    require(std::isfinite(death_threshold), "death_threshold", "must be finite");
    require(mutation_probability >= 0.0 && mutation_probability <= 1.0, "mutation_probability",
            "must lie in [0, 1]");
    require(finite_non_negative(mutation_variance), "mutation_variance", "must be a finite value >= 0");
    require(max_rounds >= 0, "rounds", "must be >= 0");
}

}  // namespace normsim
