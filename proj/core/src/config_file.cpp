#include "normsim/config_file.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace normsim {

namespace {

constexpr std::array<std::string_view, 26> kKeys{
    "condition",          "mutation_operator",      "conditions",           "initial_agents",
    "initial_resource",   "initial_energy",         "trait_init_range",     "noise_init_range",
    "regrowth_per_round", "metabolism_per_round",   "sanction_cost_factor", "observation_window",
    "reproduction_threshold", "death_threshold",    "mutation_probability", "mutation_variance",
    "noise_enabled_bite", "noise_enabled_threshold", "noise_enabled_strength", "rounds",
    "seed",               "replicates",             "success_threshold",    "parallelism",
    "extinct_as_zero",    "master_seed",
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string where(int line) {
    return line > 0 ? "line " + std::to_string(line) : std::string("command line");
}

[[noreturn]] void fail(const ConfigAssignment& a, const std::string& expected) {
    throw ConfigError(where(a.line) + ": " + a.key + ": expected " + expected + ", got '" + a.value + "'", a.line,
                      a.key);
}

template <class T>
std::optional<T> parse_number(std::string_view text) {
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

double as_real(const ConfigAssignment& a) {
    if (auto v = parse_number<double>(trim(a.value))) return *v;
    fail(a, "a number");
}

int as_int(const ConfigAssignment& a) {
    if (auto v = parse_number<int>(trim(a.value))) return *v;
    fail(a, "an integer");
}

std::uint64_t as_u64(const ConfigAssignment& a) {
    if (auto v = parse_number<std::uint64_t>(trim(a.value))) return *v;
    fail(a, "an unsigned 64-bit integer");
}

bool as_bool(const ConfigAssignment& a) {
    const auto v = trim(a.value);
    if (v == "true") return true;
    if (v == "false") return false;
    fail(a, "true or false");
}

Range as_range(const ConfigAssignment& a) {
    auto v = trim(a.value);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail(a, "a range like [0, 0.5]");
    v = v.substr(1, v.size() - 2);
    const auto comma = v.find(',');
    if (comma == std::string_view::npos) fail(a, "a range like [0, 0.5]");
    const auto lo = parse_number<double>(trim(v.substr(0, comma)));
    const auto hi = parse_number<double>(trim(v.substr(comma + 1)));
    if (!lo || !hi) fail(a, "a range like [0, 0.5]");
    return {*lo, *hi};
}

Condition as_condition(const ConfigAssignment& a, std::string_view text) {
    if (auto c = parse_condition(trim(text))) return *c;
    fail(a, "deterministic or probabilistic");
}

MutationOperator as_operator(const ConfigAssignment& a, std::string_view text) {
    if (auto op = parse_operator(trim(text))) return *op;
    fail(a, "gaussian or legacy_set_to_one");
}

std::string real_text(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::span<const std::string_view> config_keys() { return kKeys; }

std::vector<ConfigAssignment> parse_config_lines(std::string_view text) {
    std::vector<ConfigAssignment> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const auto raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        auto line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(where(line_no) + ": expected 'key = value', got '" + std::string(line) + "'", line_no);
        }
        ConfigAssignment a{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
        if (a.key.empty()) throw ConfigError(where(line_no) + ": missing key", line_no);
        if (std::find(kKeys.begin(), kKeys.end(), a.key) == kKeys.end()) {
            throw ConfigError(where(line_no) + ": unknown key '" + a.key + "'", line_no, a.key);
        }
        for (const auto& prev : out) {
            if (prev.key == a.key) {
                throw ConfigError(where(line_no) + ": duplicate key '" + a.key + "' (first set on line " +
                                      std::to_string(prev.line) + ")",
                                  line_no, a.key);
            }
        }
        out.push_back(std::move(a));
    }
    return out;
}

ParsedConfig build_config(std::span<const ConfigAssignment> assignments) {
    ParsedConfig parsed;
    ExperimentSpec& spec = parsed.spec;
    SimConfig& base = spec.base;

    std::optional<Condition> single;
    std::optional<MutationOperator> op;
    struct ListEntry {
        Condition condition;
        std::optional<MutationOperator> op;
    };
    std::optional<std::vector<ListEntry>> list;
    std::size_t single_at = 0;
    std::size_t list_at = 0;
    std::map<std::string, int> line_of;

    for (std::size_t i = 0; i < assignments.size(); ++i) {
        const auto& a = assignments[i];
        line_of[a.key] = a.line;
        const std::string_view k = a.key;
        if (k == "condition") {
            single = as_condition(a, a.value);
            single_at = i + 1;
        } else if (k == "mutation_operator") {
            op = as_operator(a, a.value);
        } else if (k == "conditions") {
            list.emplace();
            std::string_view rest = a.value;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                const auto item = trim(rest.substr(0, comma));
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
                if (item.empty()) fail(a, "a list like deterministic/gaussian, probabilistic/gaussian");
                const auto slash = item.find('/');
                ListEntry e{as_condition(a, item.substr(0, slash)), std::nullopt};
                if (slash != std::string_view::npos) e.op = as_operator(a, item.substr(slash + 1));
                list->push_back(e);
            }
            if (list->empty()) fail(a, "at least one condition");
            list_at = i + 1;
        } else if (k == "initial_agents") {
            base.initial_agents = as_int(a);
        } else if (k == "initial_resource") {
            base.initial_resource = as_real(a);
        } else if (k == "initial_energy") {
            base.initial_energy = as_real(a);
        } else if (k == "trait_init_range") {
            base.trait_init_range = as_range(a);
        } else if (k == "noise_init_range") {
            base.noise_init_range = as_range(a);
        } else if (k == "regrowth_per_round") {
            base.regrowth_per_round = as_real(a);
        } else if (k == "metabolism_per_round") {
            base.metabolism_per_round = as_real(a);
        } else if (k == "sanction_cost_factor") {
            base.sanction_cost_factor = as_real(a);
        } else if (k == "observation_window") {
            base.observation_window = as_int(a);
        } else if (k == "reproduction_threshold") {
            base.reproduction_threshold = as_real(a);
        } else if (k == "death_threshold") {
            base.death_threshold = as_real(a);
        } else if (k == "mutation_probability") {
            base.mutation_probability = as_real(a);
        } else if (k == "mutation_variance") {
            base.mutation_variance = as_real(a);
        } else if (k == "noise_enabled_bite") {
            base.noise_enabled[0] = as_bool(a);
        } else if (k == "noise_enabled_threshold") {
            base.noise_enabled[1] = as_bool(a);
        } else if (k == "noise_enabled_strength") {
            base.noise_enabled[2] = as_bool(a);
        } else if (k == "rounds") {
            base.max_rounds = as_int(a);
        } else if (k == "seed" || k == "master_seed") {
            spec.master_seed = base.seed = as_u64(a);
            parsed.seed_given = true;
        } else if (k == "replicates") {
            spec.replicates = as_int(a);
        } else if (k == "success_threshold") {
            spec.success_population_threshold = as_int(a);
        } else if (k == "parallelism") {
            spec.parallelism = as_int(a);
        } else if (k == "extinct_as_zero") {
            spec.extinct_as_zero = as_bool(a);
        } else {
            throw ConfigError(where(a.line) + ": unknown key '" + a.key + "'", a.line, a.key);
        }
    }

    const MutationOperator default_op = op.value_or(MutationOperator::Gaussian);
    if (list && list_at > single_at) {
        for (const auto& e : *list) spec.conditions.push_back({e.condition, e.op.value_or(default_op)});
    } else if (single) {
        spec.conditions.push_back({*single, default_op});
    } else {
        throw ConfigError("missing required key 'condition' (or 'conditions')", 0, "condition");
    }
    base.condition = spec.conditions.front().condition;
    base.mutation_operator = spec.conditions.front().op;

    try {
        spec.validate();
    } catch (const ConfigError& e) {
        const auto it = line_of.find(e.key());
        const int line = it == line_of.end() ? 0 : it->second;
        throw ConfigError((line > 0 ? where(line) + ": " : std::string()) + e.what(), line, e.key());
    }
    return parsed;
}

ParsedConfig parse_config_text(std::string_view text) {
    const auto lines = parse_config_lines(text);
    return build_config(lines);
}

ParsedConfig parse_config(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return parse_config_text(text);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what(), e.line(), e.key());
    }
}

std::vector<std::string> config_echo(const SimConfig& c) {
    const auto range = [](const Range& r) { return "[" + real_text(r.lo) + ", " + real_text(r.hi) + "]"; };
    const auto boolean = [](bool b) { return std::string(b ? "true" : "false"); };
    return {
        "condition = " + std::string(to_string(c.condition)),
        "mutation_operator = " + std::string(to_string(c.mutation_operator)),
        "initial_agents = " + std::to_string(c.initial_agents),
        "initial_resource = " + real_text(c.initial_resource),
        "initial_energy = " + real_text(c.initial_energy),
        "trait_init_range = " + range(c.trait_init_range),
        "noise_init_range = " + range(c.noise_init_range),
        "regrowth_per_round = " + real_text(c.regrowth_per_round),
        "metabolism_per_round = " + real_text(c.metabolism_per_round),
        "sanction_cost_factor = " + real_text(c.sanction_cost_factor),
        "observation_window = " + std::to_string(c.observation_window),
        "reproduction_threshold = " + real_text(c.reproduction_threshold),
        "death_threshold = " + real_text(c.death_threshold),
        "mutation_probability = " + real_text(c.mutation_probability),
        "mutation_variance = " + real_text(c.mutation_variance),
        "noise_enabled_bite = " + boolean(c.noise_enabled[0]),
        "noise_enabled_threshold = " + boolean(c.noise_enabled[1]),
        "noise_enabled_strength = " + boolean(c.noise_enabled[2]),
        "rounds = " + std::to_string(c.max_rounds),
        "seed = " + std::to_string(c.seed),
    };
}

SimConfig sim_config_from_lines(std::span<const std::string> lines) {
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    return parse_config_text(text).spec.base;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace normsim
