// foksim: command-line front end for the recall/affect simulator.
//
// Subcommands:
//   run        - execute a scenario, emit a JSON Lines event log
//   prob       - analytic single-attempt recall probability (optionally
//                cross-checked against the exact enumeration oracle)
//   sweep      - parameter sweep, CSV output
//   summarize  - fold a log file into per-episode and aggregate stats
//
// Exit codes: 0 success, 2 config/validation error, 3 oracle mismatch.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fok/memory_core.hpp"
#include "fok/scenario.hpp"
#include "fok/simulation.hpp"
#include "fok/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOracleMismatch = 3;
constexpr double kOracleTolerance = 1e-12;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw fok::ConfigError("cannot open output file '" + path + "'");
    }
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw fok::ConfigError("cannot read file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

struct RunOptions {
    std::string config;
    std::string out = "-";
    std::optional<uint64_t> seed;
    bool dump_config = false;
};

int cmd_run(const RunOptions& opt) {
    fok::ScenarioConfig cfg = fok::load_scenario_config(opt.config);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.dump_config) {
        write_output(opt.out, fok::to_json(cfg));
        return kExitOk;
    }
    const fok::EventLog log = fok::run_scenario(cfg);
    write_output(opt.out, log.render());
    return kExitOk;
}

struct ProbOptions {
    int n = 1;
    double p = 1.0;
    double theta = 0.0;
    std::string model = "flip";
    bool with_enum = false;
};

int cmd_prob(const ProbOptions& opt) {
    const fok::CueSpec spec{fok::noise_model_from_string(opt.model), opt.p};
    const double analytic = fok::recall_probability(opt.n, spec, opt.theta);
    std::printf("analytic %.12f\n", analytic);
    if (opt.with_enum) {
        const double oracle = fok::recall_probability_enum(opt.n, spec, opt.theta);
        std::printf("enum     %.12f\n", oracle);
        if (std::fabs(analytic - oracle) > kOracleTolerance) {
            std::fprintf(stderr, "oracle mismatch: |analytic - enum| = %.3e exceeds %.1e\n",
                         std::fabs(analytic - oracle), kOracleTolerance);
            return kExitOracleMismatch;
        }
    }
    return kExitOk;
}

struct SweepOptions {
    std::string config;
    std::string grid;
    int runs = 100;
    std::string out = "-";
    bool serial = false;
};

int cmd_sweep(const SweepOptions& opt) {
    const fok::ScenarioConfig cfg = fok::load_scenario_config(opt.config);
    const fok::SweepGrid grid = fok::load_sweep_grid(opt.grid);
    const fok::SweepTable table =
        opt.serial ? fok::run_sweep_serial(cfg, grid, opt.runs) : fok::run_sweep(cfg, grid, opt.runs);
    write_output(opt.out, table.render_csv());
    return kExitOk;
}

int cmd_summarize(const std::string& log_path) {
    const fok::EventLog log = fok::parse_event_log(read_file(log_path));
    std::cout << fok::to_json(fok::summarize(log));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"foksim: stochastic simulator of emotion-modulated memory recall"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Run a scenario and emit a JSON Lines event log");
    run->add_option("--config", run_opt.config, "Builtin scenario name or config file path")->required();
    run->add_option("--out", run_opt.out, "Output path ('-' for stdout)");
    run->add_option("--seed", run_opt.seed, "Override the scenario seed");
    run->add_flag("--dump-config", run_opt.dump_config, "Print the effective config JSON and exit");

    ProbOptions prob_opt;
    auto* prob = app.add_subcommand("prob", "Analytic single-attempt recall probability");
    prob->add_option("--n", prob_opt.n, "Trace dimension")->required();
    prob->add_option("--p", prob_opt.p, "Per-component correctness probability")->required();
    prob->add_option("--theta", prob_opt.theta, "Retrieval threshold in [0,1)");
    prob->add_option("--model", prob_opt.model, "Noise model: flip or erase");
    prob->add_flag("--enum", prob_opt.with_enum, "Cross-check against the enumeration oracle");

    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep, CSV output");
    sweep->add_option("--config", sweep_opt.config, "Builtin scenario name or config file path")->required();
    sweep->add_option("--grid", sweep_opt.grid, "Grid JSON file: {parameter: [values...]}")->required();
    sweep->add_option("--runs", sweep_opt.runs, "Runs per grid point");
    sweep->add_option("--out", sweep_opt.out, "Output path ('-' for stdout)");
    sweep->add_flag("--serial", sweep_opt.serial, "Force the single-threaded sweep");

    std::string log_path;
    auto* summarize = app.add_subcommand("summarize", "Summarize an event log");
    summarize->add_option("--log", log_path, "Event log file (JSON Lines)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(run_opt);
        if (prob->parsed()) return cmd_prob(prob_opt);
        if (sweep->parsed()) return cmd_sweep(sweep_opt);
        if (summarize->parsed()) return cmd_summarize(log_path);
    } catch (const fok::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const fok::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitConfig;
    } catch (const fok::RangeError& e) {
        std::fprintf(stderr, "range error: %s\n", e.what());
        return kExitConfig;
    } catch (const fok::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitConfig;
}
