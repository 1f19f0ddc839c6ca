#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "vdtp/optimizer.hpp"
#include "vdtp/param_space.hpp"
#include "vdtp/rng.hpp"

namespace vdtp::harness {

/// Campaign description. Read from a sectioned key-value file; see
/// configs/example.cfg for every key.
struct ExperimentConfig {
    std::string scenario = "Urban";
    Bounds bounds = Bounds::vdtp();
    std::vector<OptimizerParams> algorithms;  // empty means all five with defaults
    int runs = 30;
    std::size_t max_evaluations = 1000;
    int replications = 10;
    std::uint64_t master_seed = 1;
    std::filesystem::path output_dir = "results";
    int workers = 1;

    /// Algorithms in campaign order, filling in the defaults when empty.
    std::vector<OptimizerParams> resolved_algorithms() const;

    /// Throws ConfigError on invalid values, unknown scenarios, or invalid
    /// algorithm parameters.
    void validate() const;
};

ExperimentConfig parse_experiment_config(std::istream& in, std::string_view source = "<stream>");
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Canonical text form; parse_experiment_config() reads it back.
std::string format_experiment_config(const ExperimentConfig& config);

/// Seed of run `run_index` (1-based). Independent of the algorithm, so run i
/// of every algorithm shares it.
inline std::uint64_t run_seed(std::uint64_t master_seed, int run_index) {
    return derive_seed(master_seed, {stream::kRun, static_cast<std::uint64_t>(run_index)});
}

/// One parameter combination of a sweep grid.
struct GridCombination {
    std::string label;  // e.g. "cr=0.1 mu_de=0.9"
    std::vector<std::pair<std::string, std::string>> assignments;
    int line = 0;
};

/// One combination per line, written as whitespace- or comma-separated
/// `key=value` pairs. Each combination is applied to `base` and validated
/// against `max_evaluations`; errors name the line.
std::vector<GridCombination> parse_grid(std::istream& in, const OptimizerParams& base, std::size_t max_evaluations,
                                        std::string_view source = "<grid>");

OptimizerParams apply_combination(const OptimizerParams& base, const GridCombination& combo);

}  // namespace vdtp::harness
