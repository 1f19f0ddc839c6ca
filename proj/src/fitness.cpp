#include "vdtp/fitness.hpp"

#include <cmath>

#include <fmt/format.h>

namespace vdtp {

double fitness_term(double transmission_time_s, double lost_packets, double data_kbytes) {
    return (transmission_time_s + lost_packets) / std::log10(data_kbytes + kFitnessC);
}

double aggregate_fitness(const std::vector<TransferOutcome>& outcomes) {
    if (outcomes.empty()) throw ConfigError("fitness needs at least one replication");
    double sum = 0.0;
    for (const TransferOutcome& o : outcomes)
        sum += fitness_term(o.transmission_time_s, o.lost_packets, o.data_per_session_kbytes());
    return sum / static_cast<double>(outcomes.size());
}

FitnessReport evaluate(const VdtpConfig& config, const Scenario& scenario, int n, std::uint64_t seed) {
    if (n < 1) throw ConfigError(fmt::format("replications must be >= 1, got {}", n));
    FitnessReport report;
    report.config = config;
    report.n = n;
    const ProtocolConfig protocol = quantize_for_protocol(config);
    report.replications.reserve(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
        report.replications.push_back(simulate_replication(
            protocol, scenario, derive_seed(seed, {stream::kReplication, static_cast<std::uint64_t>(r)})));
    report.fitness = aggregate_fitness(report.replications);
    return report;
}

Objective make_vdtp_objective(Scenario scenario, int n, std::uint64_t run_seed) {
    scenario.validate();
    if (n < 1) throw ConfigError(fmt::format("replications must be >= 1, got {}", n));
    return [scenario = std::move(scenario), n, run_seed](std::span<const double> x, std::size_t k) {
        return evaluate(VdtpConfig::from(x), scenario, n, evaluation_seed(run_seed, k)).fitness;
    };
}

}  // namespace vdtp
