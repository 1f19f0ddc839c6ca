#pragma once

#include <cstdint>
#include <vector>

#include "vdtp/optimizer.hpp"
#include "vdtp/param_space.hpp"
#include "vdtp/scenario.hpp"
#include "vdtp/simulator.hpp"

namespace vdtp {

inline constexpr double kFitnessC = 2.0;
inline constexpr int kDefaultReplications = 10;

/// One replication's contribution: (time + losses) / log10(data_kbytes + C).
double fitness_term(double transmission_time_s, double lost_packets, double data_kbytes);

struct FitnessReport {
    double fitness = 0.0;
    std::vector<TransferOutcome> replications;
    VdtpConfig config;
    int n = kDefaultReplications;
    double c_constant = kFitnessC;
};

/// Mean of fitness_term over `outcomes`, using per-session delivered kBytes.
double aggregate_fitness(const std::vector<TransferOutcome>& outcomes);

/// Replication r is simulated with derive_seed(seed, {kReplication, r}).
FitnessReport evaluate(const VdtpConfig& config, const Scenario& scenario, int n, std::uint64_t seed);

/// Seed used for the k-th objective evaluation of a run.
inline std::uint64_t evaluation_seed(std::uint64_t run_seed, std::size_t evaluation_index) {
    return derive_seed(run_seed, {stream::kEvaluation, static_cast<std::uint64_t>(evaluation_index)});
}

/// Optimizer objective: evaluation k of the run is scored with
/// evaluate(config, scenario, n, evaluation_seed(run_seed, k)).
Objective make_vdtp_objective(Scenario scenario, int n, std::uint64_t run_seed);

}  // namespace vdtp
