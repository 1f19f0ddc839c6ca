#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vdtp/fitness.hpp"
#include "vdtp/optimizer.hpp"
#include "vdtp/scenario.hpp"
#include "vdtp/stats.hpp"

namespace vdtp::harness {

/// Builds the objective for one run from its seed.
using ObjectiveFactory = std::function<Objective(std::uint64_t run_seed)>;

struct CampaignPlan {
    std::vector<OptimizerParams> algorithms;
    int runs = 30;
    std::size_t max_evaluations = 1000;
    Bounds bounds = Bounds::vdtp();
    std::uint64_t master_seed = 1;
    int workers = 1;
    /// When set, each finished run is stored there and reused on restart if
    /// its fingerprint still matches.
    std::optional<std::filesystem::path> checkpoint_dir;
    /// Extra text mixed into checkpoint fingerprints (scenario, replications).
    std::string fingerprint_context;
};

struct AlgorithmResult {
    OptimizerParams params;
    std::vector<RunRecord> runs;  // index = run - 1
    stats::SampleSummary summary;
    double mean_time_to_best_s = 0.0;
    double mean_wall_time_s = 0.0;

    std::vector<double> best_fitnesses() const;
    /// Run whose best fitness is the sample median (lower middle for even counts).
    std::size_t median_run() const;
};

struct CampaignResult {
    std::vector<AlgorithmResult> algorithms;
    /// pairwise[i][j]: signed-rank test of algorithm i against j, paired by run.
    std::vector<std::vector<stats::PairedTestResult>> pairwise;
    stats::FriedmanTable friedman;
    std::size_t reference = 0;  // row of the reference algorithm in Table-4 output
};

/// Runs every (algorithm, run) pair; run i of each algorithm uses
/// run_seed(master_seed, i). Results are keyed by (algorithm, run), so the
/// outcome does not depend on the worker count.
CampaignResult run_campaign(const CampaignPlan& plan, const ObjectiveFactory& factory);

/// Relation of the reference algorithm to another one in Table-4 output.
enum class Marker { BetterSignificant, Better, Equal, Worse, WorseSignificant };
std::string_view to_string(Marker m);
Marker marker_for(const stats::PairedTestResult& reference_vs_other);

struct QosRow {
    std::string label;
    VdtpConfig config;
    double transmission_time_s = 0.0;
    double lost_packets = 0.0;
    double data_kbytes = 0.0;  // per session
    double throughput_kbps = 0.0;
    double fitness = 0.0;
};

/// Simulates the median-run best configuration of every algorithm, plus the
/// scenario's reference configuration, with n replications on common seeds.
std::vector<QosRow> qos_table(const CampaignResult& result, const Scenario& scenario, int n, std::uint64_t seed);

QosRow qos_row(std::string label, const VdtpConfig& config, const Scenario& scenario, int n, std::uint64_t seed);

/// Writes trace_<alg>_<run>.csv, summary.csv, tests.csv, ranks.csv and
/// timing.csv into `dir`.
void write_campaign_outputs(const CampaignResult& result, const std::filesystem::path& dir);

/// Aligned text tables (summary, signed-rank tests, Friedman ranks, QoS).
std::string render_report(const CampaignResult& result, const std::vector<QosRow>& qos);

}  // namespace vdtp::harness
