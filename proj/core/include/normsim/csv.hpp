// Per-run and aggregate CSV files.
//
// Each file starts with `# key: value` metadata lines; `# config: ...` lines
// hold a configuration in the canonical config format that reproduces the
// file. Then a header row and one row per round. Absent statistics are
// empty cells; reals carry 9 significant digits.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normsim/experiment.hpp"

namespace normsim {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kRunCsvSchema = "normsim-run-csv/1";
inline constexpr std::string_view kAggregateCsvSchema = "normsim-aggregate-csv/1";

/// Where a run came from, when it belongs to a batch.
struct RunProvenance {
    std::optional<std::uint64_t> master_seed;
    std::optional<int> replicate;
};

std::string format_run_csv(const RunResult& run, const RunProvenance& provenance = {});
void write_run_csv(const RunResult& run, const std::filesystem::path& path, const RunProvenance& provenance = {});

std::string format_aggregate_csv(const BatchResult& batch, const ExperimentSpec& spec);
void write_aggregate_csv(const BatchResult& batch, const ExperimentSpec& spec, const std::filesystem::path& path);

/// Contents of a CSV file produced by this library.
struct ParsedCsv {
    std::map<std::string, std::string> metadata;
    std::vector<std::string> config_lines;
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;  // one value per header column
};

/// Throws std::runtime_error on malformed input.
ParsedCsv parse_csv_text(std::string_view text);
ParsedCsv read_csv(const std::filesystem::path& path);

/// Rebuilds a run from a parsed run CSV (values at CSV precision).
RunResult run_from_csv(const ParsedCsv& csv);

/// File name used for replicate `replicate` of `condition` in a batch bundle.
std::string run_csv_name(const ConditionSpec& condition, int replicate);
std::string aggregate_csv_name(const ConditionSpec& condition);

}  // namespace normsim
