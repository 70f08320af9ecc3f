#include "normsim/csv.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "normsim/config_file.hpp"
#include "normsim/random.hpp"

namespace normsim {

namespace {

std::string cell(std::optional<double> v, bool integral) {
    if (!v) return {};
    char buf[40];
    if (integral) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(*v));
    } else {
        std::snprintf(buf, sizeof(buf), "%.9g", *v);
    }
    return buf;
}

void meta(std::string& out, std::string_view key, std::string_view value) {
    out += "# ";
    out += key;
    out += ": ";
    out += value;
    out += '\n';
}

void config_block(std::string& out, const std::vector<std::string>& lines) {
    for (const auto& l : lines) meta(out, "config", l);
}

std::string termination_text(const RunResult& run) {
    return run.termination == Termination::Completed ? "completed" : "extinction";
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

std::string format_run_csv(const RunResult& run, const RunProvenance& provenance) {
    std::string out;
    meta(out, "schema", kRunCsvSchema);
    meta(out, "tool", "normsim " + std::string(kToolVersion));
    meta(out, "generator", kGeneratorId);
    meta(out, "seed", std::to_string(run.config.seed));
    if (provenance.master_seed) meta(out, "master_seed", std::to_string(*provenance.master_seed));
    if (provenance.replicate) meta(out, "replicate", std::to_string(*provenance.replicate));
    meta(out, "condition", to_string(run.config.condition));
    meta(out, "mutation_operator", to_string(run.config.mutation_operator));
    meta(out, "termination", termination_text(run));
    if (run.termination == Termination::Extinction) {
        meta(out, "extinction_round", std::to_string(run.extinction_round));
    }
    config_block(out, config_echo(run.config));

    const auto columns = metric_columns();
    out += "round";
    for (const auto& c : columns) {
        out += ',';
        out += c.name;
    }
    out += '\n';
    for (const auto& m : run.rounds) {
        out += std::to_string(m.round);
        for (const auto& c : columns) {
            out += ',';
            out += cell(c.get(m), c.integral);
        }
        out += '\n';
    }
    return out;
}

void write_run_csv(const RunResult& run, const std::filesystem::path& path, const RunProvenance& provenance) {
    write_text_file(path, format_run_csv(run, provenance));
}

std::string format_aggregate_csv(const BatchResult& batch, const ExperimentSpec& spec) {
    std::string out;
    meta(out, "schema", kAggregateCsvSchema);
    meta(out, "tool", "normsim " + std::string(kToolVersion));
    meta(out, "generator", kGeneratorId);
    meta(out, "master_seed", std::to_string(batch.master_seed));
    meta(out, "runs", std::to_string(batch.runs.size()));
    meta(out, "condition", to_string(batch.condition.condition));
    meta(out, "mutation_operator", to_string(batch.condition.op));
    meta(out, "averaging", batch.extinct_as_zero ? "extinct_as_zero" : "absent_aware");
    if (batch.success_threshold != spec.success_population_threshold || batch.empty) {
        meta(out, "filtered_success_threshold", std::to_string(batch.success_threshold));
    }

    SimConfig echo = spec.base;
    echo.condition = batch.condition.condition;
    echo.mutation_operator = batch.condition.op;
    echo.seed = batch.master_seed;
    auto lines = config_echo(echo);
    lines.push_back("replicates = " + std::to_string(spec.replicates));
    lines.push_back("success_threshold = " + std::to_string(spec.success_population_threshold));
    lines.push_back(std::string("extinct_as_zero = ") + (spec.extinct_as_zero ? "true" : "false"));
    config_block(out, lines);

    const auto columns = metric_columns();
    out += "round,runs";
    for (const auto& c : columns) {
        out += ',';
        out += c.name;
    }
    out += '\n';
    for (const auto& row : batch.mean) {
        out += std::to_string(row.round);
        out += ',';
        out += std::to_string(row.runs);
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out += ',';
            out += cell(row.values[c], false);
        }
        out += '\n';
    }
    return out;
}

void write_aggregate_csv(const BatchResult& batch, const ExperimentSpec& spec, const std::filesystem::path& path) {
    write_text_file(path, format_aggregate_csv(batch, spec));
}

ParsedCsv parse_csv_text(std::string_view text) {
    ParsedCsv csv;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        const auto eol = text.find('\n', pos);
        auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        if (line.front() == '#') {
            const auto body = trim(line.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string_view::npos) continue;
            const auto key = std::string(trim(body.substr(0, colon)));
            const auto value = std::string(trim(body.substr(colon + 1)));
            if (key == "config") {
                csv.config_lines.push_back(value);
            } else {
                csv.metadata[key] = value;
            }
            continue;
        }

        const auto fields = split_commas(line);
        if (csv.header.empty()) {
            for (auto f : fields) csv.header.emplace_back(trim(f));
            continue;
        }
        if (fields.size() != csv.header.size()) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(csv.header.size()) + " fields, found " +
                                     std::to_string(fields.size()));
        }
        std::vector<std::optional<double>> row;
        row.reserve(fields.size());
        for (auto f : fields) {
            f = trim(f);
            if (f.empty()) {
                row.emplace_back();
                continue;
            }
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc{} || ptr != f.data() + f.size()) {
                throw std::runtime_error("csv line " + std::to_string(line_no) + ": not a number: '" +
                                         std::string(f) + "'");
            }
            row.emplace_back(v);
        }
        csv.rows.push_back(std::move(row));
    }
    if (csv.header.empty()) throw std::runtime_error("csv: missing header row");
    return csv;
}

ParsedCsv read_csv(const std::filesystem::path& path) {
    try {
        return parse_csv_text(read_text_file(path));
    } catch (const IoError&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

RunResult run_from_csv(const ParsedCsv& csv) {
    const auto schema = csv.metadata.find("schema");
    if (schema == csv.metadata.end() || schema->second != kRunCsvSchema) {
        throw std::runtime_error("not a run CSV (schema " + std::string(kRunCsvSchema) + " expected)");
    }
    RunResult run;
    run.config = sim_config_from_lines(csv.config_lines);

    const auto columns = metric_columns();
    if (csv.header.size() != columns.size() + 1 || csv.header.front() != "round") {
        throw std::runtime_error("run CSV: unexpected column layout");
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (csv.header[c + 1] != columns[c].name) {
            throw std::runtime_error("run CSV: unexpected column '" + csv.header[c + 1] + "'");
        }
    }

    for (const auto& row : csv.rows) {
        const auto num = [&](std::size_t i) { return row[i].value_or(0.0); };
        RoundMetrics m;
        m.round = static_cast<int>(num(0));
        m.population = static_cast<int>(num(1));
        m.resource = num(2);
        for (std::size_t g = 0; g < Genome::kGeneCount; ++g) {
            m.genes[g].mean = row[3 + 2 * g];
            m.genes[g].variance = row[4 + 2 * g];
        }
        m.hypocrite_fraction = row[15];
        m.sanction_damage = num(16);
        m.sanction_cost = num(17);
        m.births = static_cast<int>(num(18));
        m.deaths = static_cast<int>(num(19));
        m.total_consumed = num(20);
        run.rounds.push_back(m);
    }

    if (const auto t = csv.metadata.find("termination"); t != csv.metadata.end() && t->second == "extinction") {
        run.termination = Termination::Extinction;
        if (const auto r = csv.metadata.find("extinction_round"); r != csv.metadata.end()) {
            run.extinction_round = std::stoi(r->second);
        }
    }
    return run;
}

std::string run_csv_name(const ConditionSpec& condition, int replicate) {
    char idx[16];
    std::snprintf(idx, sizeof(idx), "%04d", replicate);
    return std::string(to_string(condition.condition)) + "_" + std::string(to_string(condition.op)) + "_run" + idx +
           ".csv";
}

std::string aggregate_csv_name(const ConditionSpec& condition) {
    return std::string(to_string(condition.condition)) + "_" + std::string(to_string(condition.op)) +
           "_aggregate.csv";
}

}  // namespace normsim
