// Canonical configuration format: one `key = value` assignment per line.
//
//   # comment
//   condition = probabilistic
//   mutation_operator = legacy_set_to_one
//   noise_init_range = [0, 1]
//   conditions = deterministic/gaussian, probabilistic/gaussian
//
// Omitted keys take the model defaults. Errors carry the offending line.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "normsim/experiment.hpp"

namespace normsim {

struct ConfigAssignment {
    std::string key;
    std::string value;
    int line = 0;  // 0 for command-line overrides
};

struct ParsedConfig {
    ExperimentSpec spec;
    bool seed_given = false;
};

/// Splits text into assignments. Throws ConfigError on malformed lines or duplicate keys.
std::vector<ConfigAssignment> parse_config_lines(std::string_view text);

/// Builds a validated spec from assignments applied in order. Either
/// `condition` or `conditions` must be present.
ParsedConfig build_config(std::span<const ConfigAssignment> assignments);

ParsedConfig parse_config_text(std::string_view text);

/// Throws IoError if the file cannot be read.
ParsedConfig parse_config(const std::filesystem::path& path);

/// Every key this format accepts.
std::span<const std::string_view> config_keys();

/// Canonical `key = value` lines for a single-run configuration, including the seed.
/// Reals are written with 17 significant digits so parsing them back is exact.
std::vector<std::string> config_echo(const SimConfig& config);

/// Inverse of config_echo: builds a single-run configuration from assignments.
SimConfig sim_config_from_lines(std::span<const std::string> lines);

/// Read/write failure with the path it concerns.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace normsim
