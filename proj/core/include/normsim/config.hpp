#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "normsim/genome.hpp"

namespace normsim {

enum class Condition { Deterministic, Probabilistic };
enum class MutationOperator { Gaussian, LegacySetToOne };

std::string_view to_string(Condition c);
std::string_view to_string(MutationOperator op);
std::optional<Condition> parse_condition(std::string_view text);
std::optional<MutationOperator> parse_operator(std::string_view text);

/// Invalid configuration. `line()` is 0 when the error has no source location.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what, int line = 0, std::string key = {})
        : std::invalid_argument(what), line_(line), key_(std::move(key)) {}

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    friend bool operator==(const Range&, const Range&) = default;
};

/// Every constant of the model plus the condition and operator switches.
/// Defaults are the published model settings.
struct SimConfig {
    int initial_agents = 100;
    double initial_resource = 1000.0;
    double initial_energy = 10.0;
    Range trait_init_range{0.0, 1.0};
    Range noise_init_range{0.0, 0.5};
    double regrowth_per_round = 100.0;
    double metabolism_per_round = 0.01;
    double sanction_cost_factor = 0.1;
    int observation_window = 10;
    double reproduction_threshold = 10.0;  // reproduce when energy > threshold
    double death_threshold = 0.0;          // die when energy < threshold
    double mutation_probability = 0.1;
    double mutation_variance = 0.1;
    Condition condition = Condition::Deterministic;
    MutationOperator mutation_operator = MutationOperator::Gaussian;
    std::array<bool, 3> noise_enabled{true, true, true};  // indexed by Trait
    int max_rounds = 500;
    std::uint64_t seed = 0;

    /// Whether per-use draws of `t` are noisy in this configuration.
    bool noise_active(Trait t) const {
        return condition == Condition::Probabilistic && noise_enabled[static_cast<std::size_t>(t)];
    }

    /// Whether gene `index` (B, T, S, BN, TN, SN order) is heritable and mutable.
    bool gene_active(std::size_t index) const {
        return index < 3 || noise_active(static_cast<Trait>(index - 3));
    }

    /// Throws ConfigError naming the offending field.
    void validate() const;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

}  // namespace normsim
