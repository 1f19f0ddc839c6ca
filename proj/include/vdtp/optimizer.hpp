#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vdtp/param_space.hpp"

namespace vdtp {

enum class Algorithm { PSO, DE, GA, ES, SA };
enum class GaVariant { Generational, SteadyState };
enum class EsSelection { Plus, Comma };

inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {Algorithm::PSO, Algorithm::DE, Algorithm::GA,
                                                           Algorithm::ES, Algorithm::SA};

std::string_view to_string(Algorithm a);
/// Case-insensitive; throws ConfigError on unknown names.
Algorithm parse_algorithm(std::string_view name);

/// Per-algorithm parameters. `defaults()` gives the tuned values used in the
/// reference campaigns (w = 0.5; Cr = 0.9, mu = 0.1; GA 0.8/0.2; ES 0.9/0.1;
/// cooling factor 0.8).
struct OptimizerParams {
    Algorithm algorithm = Algorithm::PSO;
    int population_size = 20;
    /// Number of generations including the initial population. 0 means "as
    /// many as the evaluation budget allows".
    int generations = 0;

    double w = 0.5;      // PSO inertia
    double cr = 0.9;     // DE crossover probability
    double mu_de = 0.1;  // DE mutation factor

    double p_cross = 0.8;  // GA/ES recombination probability
    double p_mut = 0.2;    // GA/ES mutation probability
    GaVariant ga_variant = GaVariant::Generational;

    int mu_es = 4;
    int lambda_es = 20;
    EsSelection es_selection = EsSelection::Comma;

    double alpha_temp = 0.8;  // SA geometric cooling factor
    int markov_chain_length = 20;
    int sa_probes = 20;
    double sa_target_accept = 0.8;

    static OptimizerParams defaults(Algorithm algorithm);

    /// Throws ConfigError on any inconsistency with the given budget.
    void validate(std::size_t max_evaluations) const;

    /// Sets one field from its config-file key (e.g. "w", "cr", "es_selection").
    void set(std::string_view key, std::string_view value);

    /// Key/value pairs of the fields this algorithm actually uses.
    std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Objective over physical coordinates. The evaluation index is 1-based and
/// lets stochastic objectives derive a per-evaluation seed.
using Objective = std::function<double(std::span<const double> x, std::size_t evaluation_index)>;

struct TracePoint {
    std::size_t evaluation_index = 0;  // 1-based
    double best_fitness = 0.0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

/// Budget-accounted objective. Optimizers work in the unit cube; the handle
/// maps to physical units, counts evaluations, and keeps the best-so-far trace.
class ObjectiveHandle {
public:
    ObjectiveHandle(Objective objective, Bounds bounds, std::size_t max_evaluations);

    /// Evaluates a unit-cube point. Throws std::logic_error once the budget is spent.
    double evaluate(std::span<const double> unit_x);

    bool exhausted() const { return used_ >= max_evaluations_; }
    std::size_t used() const { return used_; }
    std::size_t remaining() const { return max_evaluations_ - used_; }
    std::size_t max_evaluations() const { return max_evaluations_; }
    std::size_t dims() const { return bounds_.dims(); }
    const Bounds& bounds() const { return bounds_; }

    double best_fitness() const { return best_fitness_; }
    const std::vector<double>& best_position() const { return best_position_; }
    std::size_t best_evaluation_index() const { return best_index_; }
    const std::vector<TracePoint>& trace() const { return trace_; }

    double elapsed_s() const;
    double time_to_best_s() const { return time_to_best_s_; }

private:
    Objective objective_;
    Bounds bounds_;
    std::size_t max_evaluations_;
    std::size_t used_ = 0;
    double best_fitness_;
    std::vector<double> best_position_;
    std::size_t best_index_ = 0;
    std::vector<TracePoint> trace_;
    std::chrono::steady_clock::time_point start_;
    double time_to_best_s_ = 0.0;
};

/// One optimizer run.
struct RunRecord {
    Algorithm algorithm = Algorithm::PSO;
    std::vector<double> best_position;  // physical units
    double best_fitness = 0.0;
    std::size_t best_evaluation_index = 0;
    std::vector<TracePoint> trace;
    std::size_t evaluations_used = 0;
    int generations_completed = 0;
    double wall_time_s = 0.0;
    double time_to_best_s = 0.0;
    std::uint64_t seed = 0;

    VdtpConfig best_config() const { return VdtpConfig::from(best_position); }
};

/// Runs the selected algorithm until the budget (or the generation limit) is
/// exhausted. Bit-reproducible for a fixed seed and deterministic objective.
RunRecord run(const OptimizerParams& params, const Objective& objective, const Bounds& bounds,
              std::uint64_t seed, std::size_t max_evaluations = 1000);

}  // namespace vdtp
