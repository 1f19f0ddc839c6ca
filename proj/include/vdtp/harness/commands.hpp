#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vdtp/fitness.hpp"
#include "vdtp/harness/campaign.hpp"
#include "vdtp/harness/config.hpp"
#include "vdtp/stats.hpp"

namespace vdtp::harness {

/// Command-line overrides applied on top of an optional config file.
struct GlobalOptions {
    std::optional<std::filesystem::path> config_file;
    std::optional<std::string> scenario;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    std::optional<int> runs;
    std::optional<int> workers;
    std::optional<int> replications;
    std::optional<std::filesystem::path> out;
};

ExperimentConfig resolve_options(const GlobalOptions& options);

/// Parameters of `algorithm` from the config, or its defaults.
OptimizerParams params_for(const ExperimentConfig& config, Algorithm algorithm);

/// One run (run index 1) against the scenario. Writes trace_<alg>_1.csv and
/// best_<alg>_1.json into the output directory.
RunRecord cmd_tune(const ExperimentConfig& config, Algorithm algorithm, std::ostream& log);

struct CompareOutcome {
    CampaignResult result;
    std::vector<QosRow> qos;
    std::string report;
};

/// Full campaign. Writes traces, summary.csv, tests.csv, ranks.csv, qos.csv,
/// timing.csv, report.txt, and per-run checkpoints under checkpoints/.
CompareOutcome cmd_compare(const ExperimentConfig& config, std::ostream& log);

struct SimulateOutcome {
    FitnessReport report;
    QosRow qos;
};

/// Throws ConfigError listing every violated bound. When `events_csv` is
/// set, the event log of all replications is written there.
SimulateOutcome cmd_simulate(const ExperimentConfig& config, const VdtpConfig& vdtp_config,
                             const std::optional<std::filesystem::path>& events_csv, std::ostream& log);

struct SweepOutcome {
    std::vector<std::string> scenarios;
    std::vector<std::string> combinations;
    std::vector<std::vector<double>> mean_best;  // [scenario][combination]
};

/// Mean best fitness over `config.runs` runs for every grid combination on
/// every scenario. Writes sweep.csv.
SweepOutcome cmd_sweep(const ExperimentConfig& config, Algorithm algorithm, const std::filesystem::path& grid,
                       const std::vector<std::string>& scenarios, std::ostream& log);

struct BenchOutcome {
    std::vector<double> best;           // per run
    std::vector<double> random_best;    // per run, same budget
    stats::SampleSummary summary;
    double random_median = 0.0;
    int runs_beating_random_median = 0;
};

/// Optimizer on an analytic function over [-5, 5]^dims, with a uniform random
/// search baseline at the same budget. Writes bench.csv.
BenchOutcome cmd_bench(const ExperimentConfig& config, Algorithm algorithm, const std::string& function, int dims,
                       std::ostream& log);

}  // namespace vdtp::harness
