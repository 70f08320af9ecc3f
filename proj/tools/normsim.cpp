// normsim: command-line front end.
//
//   normsim run     --config cfg.txt --out results/
//   normsim batch   --config cfg.txt --replicates 100 --parallelism 8 --out results/
//   normsim plot    results/runs --out figures/
//   normsim replay  results/runs/deterministic_gaussian_run0003.csv --out replayed/

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "normsim/normsim.hpp"

namespace fs = std::filesystem;
using namespace normsim;

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kIoError = 3,
    kReplayMismatch = 4,
};

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> condition;
    std::optional<std::string> op;
    std::optional<int> rounds;
    std::optional<int> replicates;
    std::optional<int> success_threshold;
    std::optional<int> parallelism;
    std::string out = "normsim-out";
};

void add_common_flags(CLI::App& cmd, Overrides& o) {
    cmd.add_option("--config", o.config_path, "Configuration file (key = value lines)");
    cmd.add_option("--seed", o.seed, "Seed (master seed for batches)");
    cmd.add_option("--condition", o.condition, "deterministic | probabilistic");
    cmd.add_option("--operator", o.op, "gaussian | legacy_set_to_one");
    cmd.add_option("--rounds", o.rounds, "Rounds per run");
    cmd.add_option("--out", o.out, "Output directory");
}

// Config file first, then each flag as a one-for-one key override.
ParsedConfig load_spec(const Overrides& o) {
    std::vector<ConfigAssignment> assignments;
    if (!o.config_path.empty()) {
        try {
            assignments = parse_config_lines(read_text_file(o.config_path));
        } catch (const ConfigError& e) {
            throw ConfigError(o.config_path + ": " + e.what(), e.line(), e.key());
        }
    }
    const auto set = [&](const std::string& key, const std::string& value) {
        std::erase_if(assignments, [&](const ConfigAssignment& a) { return a.key == key; });
        assignments.push_back({key, value, 0});
    };
    if (o.seed) {
        std::erase_if(assignments, [](const ConfigAssignment& a) { return a.key == "master_seed"; });
        set("seed", std::to_string(*o.seed));
    }
    if (o.condition) set("condition", *o.condition);
    if (o.op) set("mutation_operator", *o.op);
    if (o.rounds) set("rounds", std::to_string(*o.rounds));
    if (o.replicates) set("replicates", std::to_string(*o.replicates));
    if (o.success_threshold) set("success_threshold", std::to_string(*o.success_threshold));
    if (o.parallelism) set("parallelism", std::to_string(*o.parallelism));

    // --condition names a single condition and replaces a `conditions` list from the file.
    if (o.condition) {
        std::erase_if(assignments, [](const ConfigAssignment& a) { return a.key == "conditions"; });
    }

    ParsedConfig parsed = build_config(assignments);
    if (!parsed.seed_given) {
        std::random_device entropy;
        const std::uint64_t seed = (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
        parsed.spec.master_seed = parsed.spec.base.seed = seed;
        std::cerr << "normsim: no seed given, using " << seed << "\n";
    }
    return parsed;
}

std::string label(const ConditionSpec& c) {
    return std::string(to_string(c.condition)) + "_" + std::string(to_string(c.op));
}

void print_checks(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks) {
        std::printf("  [%s]%s %s: %s (observed %.4g, threshold %.4g)\n", c.passed ? "PASS" : "FAIL",
                    c.gating ? "" : " (informative)", c.id.c_str(), c.description.c_str(), c.observed, c.threshold);
    }
}

int cmd_run(const Overrides& o) {
    const ParsedConfig parsed = load_spec(o);
    const SimConfig& config = parsed.spec.base;
    const RunResult run = run_simulation(config);

    fs::create_directories(o.out);
    write_run_csv(run, fs::path(o.out) / "run.csv");

    BatchResult batch;
    batch.condition = {config.condition, config.mutation_operator};
    batch.master_seed = config.seed;
    batch.runs = {run};
    batch.replicate_ids = {0};
    batch.success = {run.final_population() > parsed.spec.success_population_threshold};
    batch.success_threshold = parsed.spec.success_population_threshold;
    batch.mean = aggregate_runs(batch.runs, false);
    ExperimentSpec spec = parsed.spec;
    spec.replicates = 1;
    spec.conditions = {batch.condition};
    write_text_file(fs::path(o.out) / "summary.json", format_summary_json(spec, std::span(&batch, 1)));

    std::printf("%s/%s seed %llu: %d rounds, final population %d, %s\n", std::string(to_string(config.condition)).c_str(),
                std::string(to_string(config.mutation_operator)).c_str(),
                static_cast<unsigned long long>(config.seed), run.rounds_executed(), run.final_population(),
                run.termination == Termination::Completed ? "completed" : "extinct");
    return kOk;
}

int cmd_batch(const Overrides& o, bool plots) {
    const ParsedConfig parsed = load_spec(o);
    const ExperimentSpec& spec = parsed.spec;
    const fs::path out(o.out);
    fs::create_directories(out / "runs");

    const std::vector<BatchResult> batches = run_experiment(spec);
    for (const auto& b : batches) {
        for (std::size_t i = 0; i < b.runs.size(); ++i) {
            write_run_csv(b.runs[i], out / "runs" / run_csv_name(b.condition, b.replicate_ids[i]),
                          RunProvenance{spec.master_seed, b.replicate_ids[i]});
        }
        write_aggregate_csv(b, spec, out / aggregate_csv_name(b.condition));
        const BatchResult successful = filter_successful(b, spec.success_population_threshold);
        write_aggregate_csv(successful, spec, out / (label(b.condition) + "_successful_aggregate.csv"));
        if (plots) {
            emit_plots(b, out / (label(b.condition) + ".svg"));
            if (!successful.empty) emit_plots(successful, out / (label(b.condition) + "_successful.svg"));
        }
        std::printf("%s: %zu runs, %zu successful (final population > %d)\n", label(b.condition).c_str(),
                    b.runs.size(), successful.runs.size(), spec.success_population_threshold);
        print_checks(batch_checks(b));
    }
    write_text_file(out / "summary.json", format_summary_json(spec, batches));
    return kOk;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const auto& in : inputs) {
        if (fs::is_directory(in)) {
            for (const auto& entry : fs::directory_iterator(in)) {
                if (entry.path().extension() == ".csv") files.push_back(entry.path());
            }
        } else {
            files.emplace_back(in);
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& out) {
    std::map<std::string, BatchResult> groups;
    for (const auto& file : expand_inputs(inputs)) {
        const ParsedCsv csv = read_csv(file);
        if (csv.metadata.count("schema") == 0 || csv.metadata.at("schema") != kRunCsvSchema) continue;
        RunResult run = run_from_csv(csv);
        const ConditionSpec c{run.config.condition, run.config.mutation_operator};
        auto& b = groups[label(c)];
        b.condition = c;
        if (const auto m = csv.metadata.find("master_seed"); m != csv.metadata.end()) {
            b.master_seed = std::stoull(m->second);
        }
        const auto r = csv.metadata.find("replicate");
        b.replicate_ids.push_back(r != csv.metadata.end() ? std::stoi(r->second) : static_cast<int>(b.runs.size()));
        b.runs.push_back(std::move(run));
    }
    if (groups.empty()) {
        std::cerr << "normsim plot: no run CSV files found in the given inputs\n";
        return kIoError;
    }
    fs::create_directories(out);
    for (auto& [name, b] : groups) {
        b.mean = aggregate_runs(b.runs, false);
        const fs::path target = fs::path(out) / (name + ".svg");
        emit_plots(b, target);
        std::printf("%s: %zu runs -> %s\n", name.c_str(), b.runs.size(), target.string().c_str());
    }
    return kOk;
}

int cmd_replay(const std::string& input, const std::string& out) {
    const std::string original = read_text_file(input);
    const ParsedCsv csv = parse_csv_text(original);
    const auto schema = csv.metadata.count("schema") ? csv.metadata.at("schema") : std::string();

    std::string replayed;
    if (schema == kRunCsvSchema) {
        const SimConfig config = sim_config_from_lines(csv.config_lines);
        RunProvenance provenance;
        if (const auto m = csv.metadata.find("master_seed"); m != csv.metadata.end()) {
            provenance.master_seed = std::stoull(m->second);
        }
        if (const auto r = csv.metadata.find("replicate"); r != csv.metadata.end()) {
            provenance.replicate = std::stoi(r->second);
        }
        replayed = format_run_csv(run_simulation(config), provenance);
    } else if (schema == kAggregateCsvSchema) {
        std::string text;
        for (const auto& l : csv.config_lines) text += l + "\n";
        const ExperimentSpec spec = parse_config_text(text).spec;
        BatchResult batch = run_batch(spec, spec.conditions.front());
        if (const auto f = csv.metadata.find("filtered_success_threshold"); f != csv.metadata.end()) {
            batch = filter_successful(batch, std::stoi(f->second));
        }
        replayed = format_aggregate_csv(batch, spec);
    } else {
        std::cerr << "normsim replay: " << input << " has no recognised schema line\n";
        return kConfigError;
    }

    fs::create_directories(out);
    const fs::path target = fs::path(out) / fs::path(input).filename();
    write_text_file(target, replayed);
    if (replayed == original) {
        std::printf("replay of %s is byte-identical -> %s\n", input.c_str(), target.string().c_str());
        return kOk;
    }
    std::printf("replay of %s DIFFERS from the original -> %s\n", input.c_str(), target.string().c_str());
    return kReplayMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normsim: continuous norm emergence simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "normsim " + std::string(kToolVersion));

    Overrides run_opts;
    auto* run = app.add_subcommand("run", "Single run");
    add_common_flags(*run, run_opts);

    Overrides batch_opts;
    bool no_plots = false;
    auto* batch = app.add_subcommand("batch", "Replicate ensemble per condition");
    add_common_flags(*batch, batch_opts);
    batch->add_option("--replicates", batch_opts.replicates, "Replicates per condition");
    batch->add_option("--success-threshold", batch_opts.success_threshold,
                      "Final population a run must exceed to count as successful");
    batch->add_option("--parallelism", batch_opts.parallelism, "Worker threads");
    batch->add_flag("--no-plots", no_plots, "Skip SVG figures");

    std::vector<std::string> plot_inputs;
    std::string plot_out = "normsim-plots";
    auto* plot = app.add_subcommand("plot", "Render SVG figures from run CSV files");
    plot->add_option("inputs", plot_inputs, "Run CSV files or directories")->required();
    plot->add_option("--out", plot_out, "Output directory");

    std::string replay_input;
    std::string replay_out = "normsim-replay";
    auto* replay = app.add_subcommand("replay", "Re-run a CSV file from its embedded metadata");
    replay->add_option("file", replay_input, "Run or aggregate CSV produced by normsim")->required();
    replay->add_option("--out", replay_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return cmd_run(run_opts);
        if (*batch) return cmd_batch(batch_opts, !no_plots);
        if (*plot) return cmd_plot(plot_inputs, plot_out);
        if (*replay) return cmd_replay(replay_input, replay_out);
    } catch (const ConfigError& e) {
        std::cerr << "normsim: config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const IoError& e) {
        std::cerr << "normsim: io error: " << e.what() << "\n";
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "normsim: io error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "normsim: error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
