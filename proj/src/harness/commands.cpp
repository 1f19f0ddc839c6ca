#include "vdtp/harness/commands.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "vdtp/harness/benchmarks.hpp"
#include "vdtp/harness/csv.hpp"
#include "vdtp/harness/records.hpp"
#include "vdtp/kv_text.hpp"
#include "vdtp/scenario.hpp"
#include "vdtp/simulator.hpp"

namespace vdtp::harness {

namespace {

std::string campaign_context(const Scenario& scenario, int replications) {
    return fmt::format("{}|n={}", format_scenario(scenario), replications);
}

std::uint64_t qos_seed(std::uint64_t master_seed) { return derive_seed(master_seed, {stream::kEvaluation}); }

}  // namespace

ExperimentConfig resolve_options(const GlobalOptions& o) {
    ExperimentConfig cfg = o.config_file ? load_experiment_config(*o.config_file) : ExperimentConfig{};
    if (o.scenario) cfg.scenario = *o.scenario;
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.budget) cfg.max_evaluations = *o.budget;
    if (o.runs) cfg.runs = *o.runs;
    if (o.workers) cfg.workers = *o.workers;
    if (o.replications) cfg.replications = *o.replications;
    if (o.out) cfg.output_dir = *o.out;
    if (cfg.max_evaluations < 1) throw ConfigError("budget must be >= 1");
    cfg.validate();
    return cfg;
}

OptimizerParams params_for(const ExperimentConfig& config, Algorithm algorithm) {
    for (const auto& p : config.algorithms)
        if (p.algorithm == algorithm) return p;
    return OptimizerParams::defaults(algorithm);
}

RunRecord cmd_tune(const ExperimentConfig& config, Algorithm algorithm, std::ostream& log) {
    const Scenario scenario = resolve_scenario(config.scenario);
    const OptimizerParams params = params_for(config, algorithm);
    params.validate(config.max_evaluations);
    const std::uint64_t seed = run_seed(config.master_seed, 1);
    RunRecord rec = run(params, make_vdtp_objective(scenario, config.replications, seed), config.bounds, seed,
                        config.max_evaluations);

    std::ostringstream trace;
    write_trace_csv(trace, rec.trace);
    write_text_file(config.output_dir / fmt::format("trace_{}_1.csv", to_string(algorithm)), trace.str());

    const FitnessReport report = evaluate(rec.best_config(), scenario, config.replications,
                                          evaluation_seed(seed, rec.best_evaluation_index));
    write_text_file(config.output_dir / fmt::format("best_{}_1.json", to_string(algorithm)),
                    best_config_json(rec, report));

    const VdtpConfig best = rec.best_config();
    fmt::print(log, "{} on {}: {} evaluations, {} generations\n", to_string(algorithm), scenario.name,
               rec.evaluations_used, rec.generations_completed);
    fmt::print(log, "best fitness {:.6g} at evaluation {}: chunk_size={:.0f} total_attempts={:.0f} "
                    "retransmission_time={:.4f}\n",
               rec.best_fitness, rec.best_evaluation_index, best.chunk_size, best.total_attempts,
               best.retransmission_time);
    return rec;
}

CompareOutcome cmd_compare(const ExperimentConfig& config, std::ostream& log) {
    const Scenario scenario = resolve_scenario(config.scenario);
    CampaignPlan plan;
    plan.algorithms = config.resolved_algorithms();
    if (plan.algorithms.size() < 2) throw ConfigError("compare needs at least two algorithms");
    plan.runs = config.runs;
    plan.max_evaluations = config.max_evaluations;
    plan.bounds = config.bounds;
    plan.master_seed = config.master_seed;
    plan.workers = config.workers;
    plan.checkpoint_dir = config.output_dir / "checkpoints";
    plan.fingerprint_context = campaign_context(scenario, config.replications);

    const int n = config.replications;
    CompareOutcome out;
    out.result = run_campaign(plan, [&](std::uint64_t seed) { return make_vdtp_objective(scenario, n, seed); });
    out.qos = qos_table(out.result, scenario, n, qos_seed(config.master_seed));
    out.report = render_report(out.result, out.qos);

    write_campaign_outputs(out.result, config.output_dir);
    std::ostringstream qos;
    write_qos_csv(qos, out.qos);
    write_text_file(config.output_dir / "qos.csv", qos.str());
    write_text_file(config.output_dir / "report.txt", out.report);
    log << out.report;
    return out;
}

SimulateOutcome cmd_simulate(const ExperimentConfig& config, const VdtpConfig& vdtp_config,
                             const std::optional<std::filesystem::path>& events_csv, std::ostream& log) {
    const auto violations = bound_violations(vdtp_config, config.bounds);
    if (!violations.empty()) {
        std::string msg = "configuration out of bounds:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw ConfigError(msg);
    }
    const Scenario scenario = resolve_scenario(config.scenario);
    const std::uint64_t seed = config.master_seed;
    SimulateOutcome out;
    out.report = evaluate(vdtp_config, scenario, config.replications, seed);
    out.qos = qos_row("config", vdtp_config, scenario, config.replications, seed);

    if (events_csv) {
        if (events_csv->has_parent_path()) std::filesystem::create_directories(events_csv->parent_path());
        std::ofstream ev(*events_csv);
        if (!ev) throw std::runtime_error(fmt::format("cannot write '{}'", events_csv->string()));
        EventCsvWriter writer(ev);
        const ProtocolConfig protocol = quantize_for_protocol(vdtp_config);
        for (int r = 0; r < config.replications; ++r)
            simulate_replication(protocol, scenario, derive_seed(seed, {stream::kReplication, static_cast<std::uint64_t>(r)}),
                                 [&](const SimEvent& e) { writer(e); });
    }

    std::ostringstream qos;
    write_qos_csv(qos, {out.qos});
    write_text_file(config.output_dir / "qos.csv", qos.str());

    const ProtocolConfig p = quantize_for_protocol(vdtp_config);
    fmt::print(log, "scenario {}: chunk_bytes={} attempts={} timeout_s={:.4f}, {} replications\n", scenario.name,
               p.chunk_bytes, p.attempts, p.timeout_s, config.replications);
    fmt::print(log, "{:>4} {:>12} {:>10} {:>12} {:>10} {:>8}\n", "rep", "time_s", "lost", "data_kB", "completed",
               "refused");
    for (std::size_t r = 0; r < out.report.replications.size(); ++r) {
        const auto& o = out.report.replications[r];
        fmt::print(log, "{:>4} {:>12.4f} {:>10.3f} {:>12.2f} {:>10} {:>8}\n", r + 1, o.transmission_time_s,
                   o.lost_packets, o.data_transferred_kbytes, o.completed_sessions, o.refused_sessions);
    }
    fmt::print(log, "fitness {:.6g}\n", out.report.fitness);
    fmt::print(log, "mean session time {:.4f} s, lost packets {:.4f}, throughput {:.2f} kB/s\n",
               out.qos.transmission_time_s, out.qos.lost_packets, out.qos.throughput_kbps);
    return out;
}

SweepOutcome cmd_sweep(const ExperimentConfig& config, Algorithm algorithm, const std::filesystem::path& grid,
                       const std::vector<std::string>& scenarios, std::ostream& log) {
    std::ifstream in(grid);
    if (!in) throw ConfigError(fmt::format("cannot open grid file '{}'", grid.string()));
    const OptimizerParams base = params_for(config, algorithm);
    const auto combos = parse_grid(in, base, config.max_evaluations, grid.string());

    SweepOutcome out;
    out.scenarios = scenarios.empty() ? std::vector<std::string>{config.scenario} : scenarios;
    for (const auto& c : combos) out.combinations.push_back(c.label);

    for (const auto& name : out.scenarios) {
        const Scenario scenario = resolve_scenario(name);
        std::vector<double> row;
        for (const auto& combo : combos) {
            CampaignPlan plan;
            plan.algorithms = {apply_combination(base, combo)};
            plan.runs = config.runs;
            plan.max_evaluations = config.max_evaluations;
            plan.bounds = config.bounds;
            plan.master_seed = config.master_seed;
            plan.workers = config.workers;
            const int n = config.replications;
            const auto result =
                run_campaign(plan, [&](std::uint64_t seed) { return make_vdtp_objective(scenario, n, seed); });
            row.push_back(result.algorithms[0].summary.mean);
            fmt::print(log, "{} [{}] mean best {:.6g}\n", scenario.name, combo.label, row.back());
        }
        out.mean_best.push_back(std::move(row));
    }

    std::string csv = "scenario";
    for (const auto& c : out.combinations) csv += "," + c;
    csv += "\n";
    for (std::size_t s = 0; s < out.scenarios.size(); ++s) {
        csv += out.scenarios[s];
        for (double v : out.mean_best[s]) csv += "," + format_double(v);
        csv += "\n";
    }
    write_text_file(config.output_dir / "sweep.csv", csv);
    return out;
}

BenchOutcome cmd_bench(const ExperimentConfig& config, Algorithm algorithm, const std::string& function, int dims,
                       std::ostream& log) {
    if (dims < 1) throw ConfigError("dims must be >= 1");
    const Objective f = benchmark_objective(function);
    const Bounds box = Bounds::cube(static_cast<std::size_t>(dims), -5.0, 5.0);
    const OptimizerParams params = params_for(config, algorithm);
    params.validate(config.max_evaluations);

    BenchOutcome out;
    for (int i = 1; i <= config.runs; ++i) {
        const std::uint64_t seed = run_seed(config.master_seed, i);
        out.best.push_back(run(params, f, box, seed, config.max_evaluations).best_fitness);
        out.random_best.push_back(
            random_search(f, box, config.max_evaluations, derive_seed(seed, {stream::kReplication})));
    }
    out.summary = stats::summarize(out.best);
    out.random_median = stats::summarize(out.random_best).median;
    out.runs_beating_random_median = static_cast<int>(
        std::count_if(out.best.begin(), out.best.end(), [&](double b) { return b < out.random_median; }));

    std::string csv = "run,best_fitness,random_search_best\n";
    for (std::size_t i = 0; i < out.best.size(); ++i)
        csv += fmt::format("{},{},{}\n", i + 1, format_double(out.best[i]), format_double(out.random_best[i]));
    write_text_file(config.output_dir / "bench.csv", csv);

    fmt::print(log, "{} on {} ({}-D, budget {}, {} runs)\n", to_string(algorithm), function, dims,
               config.max_evaluations, config.runs);
    fmt::print(log, "best: mean {:.6g} std {:.6g} min {:.6g} median {:.6g} max {:.6g}\n", out.summary.mean,
               out.summary.std_dev, out.summary.minimum, out.summary.median, out.summary.maximum);
    fmt::print(log, "random search median {:.6g}; runs below it: {}/{}\n", out.random_median,
               out.runs_beating_random_median, config.runs);
    return out;
}

}  // namespace vdtp::harness
