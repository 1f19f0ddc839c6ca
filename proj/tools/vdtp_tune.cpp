#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vdtp/harness/benchmarks.hpp"
#include "vdtp/harness/commands.hpp"
#include "vdtp/scenario.hpp"

using namespace vdtp;
using namespace vdtp::harness;

namespace {

void add_globals(CLI::App& app, GlobalOptions& g, std::string& config_file, std::string& out) {
    app.add_option("--config", config_file, "Experiment config file");
    app.add_option("--scenario", g.scenario, "Scenario preset name or scenario file");
    app.add_option("--seed", g.seed, "Master seed");
    app.add_option("--budget", g.budget, "Objective evaluations per run");
    app.add_option("--runs", g.runs, "Independent runs");
    app.add_option("--workers", g.workers, "Parallel runs");
    app.add_option("--replications", g.replications, "Simulator replications per evaluation");
    app.add_option("--out", out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tune VDTP parameters with metaheuristics over a simulated VANET"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    std::string config_file, out;
    add_globals(app, g, config_file, out);

    std::string algorithm = "PSO";
    auto* tune = app.add_subcommand("tune", "Run one optimizer against the simulator");
    tune->add_option("-a,--algorithm", algorithm, "PSO, DE, GA, ES or SA");

    app.add_subcommand("compare", "Run a multi-algorithm campaign and report statistics");

    double chunk = 0.0, attempts = 0.0, timeout = 0.0;
    std::string events;
    auto* simulate = app.add_subcommand("simulate", "Simulate one configuration");
    simulate->add_option("--chunk-size", chunk, "Chunk size in bytes")->required();
    simulate->add_option("--attempts", attempts, "Total transmission attempts")->required();
    simulate->add_option("--timeout", timeout, "Retransmission time in seconds")->required();
    simulate->add_option("--events", events, "Write the event log CSV here");

    std::string grid;
    std::vector<std::string> sweep_scenarios;
    auto* sweep = app.add_subcommand("sweep", "Evaluate a grid of parameter combinations");
    sweep->add_option("-a,--algorithm", algorithm, "PSO, DE, GA, ES or SA");
    sweep->add_option("--grid", grid, "Grid file")->required();
    sweep->add_option("--scenarios", sweep_scenarios, "Scenarios (default: --scenario)");

    std::string function = "sphere";
    int dims = 3;
    auto* bench = app.add_subcommand("bench", "Run an optimizer on an analytic benchmark");
    bench->add_option("-a,--algorithm", algorithm, "PSO, DE, GA, ES or SA");
    bench->add_option("--function", function, "sphere, rosenbrock or rastrigin");
    bench->add_option("--dims", dims, "Dimensions");

    auto* scenarios = app.add_subcommand("scenarios", "List scenario presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (scenarios->parsed()) {
            for (const auto& name : preset_names()) std::cout << format_scenario(resolve_scenario(name)) << '\n';
            return 0;
        }
        if (!config_file.empty()) g.config_file = config_file;
        if (!out.empty()) g.out = out;
        const ExperimentConfig cfg = resolve_options(g);

        if (tune->parsed()) {
            cmd_tune(cfg, parse_algorithm(algorithm), std::cout);
        } else if (app.got_subcommand("compare")) {
            cmd_compare(cfg, std::cout);
        } else if (simulate->parsed()) {
            std::optional<std::filesystem::path> ev;
            if (!events.empty()) ev = events;
            cmd_simulate(cfg, VdtpConfig{chunk, attempts, timeout}, ev, std::cout);
        } else if (sweep->parsed()) {
            cmd_sweep(cfg, parse_algorithm(algorithm), grid, sweep_scenarios, std::cout);
        } else if (bench->parsed()) {
            cmd_bench(cfg, parse_algorithm(algorithm), function, dims, std::cout);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
