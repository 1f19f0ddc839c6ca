#pragma once

// Building blocks of the five optimizers. Everything here operates in the
// unit cube [0,1]^d; ObjectiveHandle maps back to physical units.

#include <array>
#include <span>
#include <vector>

#include "vdtp/optimizer.hpp"
#include "vdtp/rng.hpp"

namespace vdtp {

struct Individual {
    std::vector<double> position;
    double fitness = 0.0;
};

using Population = std::vector<Individual>;

/// Samples and evaluates `size` uniform points. Stops early on budget exhaustion.
Population init_population(std::size_t size, ObjectiveHandle& handle, Rng& rng);

/// Index of the lowest fitness; the first one wins ties.
std::size_t best_index(const Population& pop);
std::size_t worst_index(const Population& pop);

// ---------------------------------------------------------------- PSO

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> personal_best;
    double personal_best_fitness = 0.0;
};

struct Swarm {
    std::vector<Particle> particles;
    std::vector<double> leader;
    double leader_fitness = 0.0;
};

/// v' = w*v + phi1*(p - x) + phi2*(b - x), one coordinate.
double pso_velocity(double v, double x, double p, double b, double w, double phi1, double phi2);

/// Velocity then position update with the given coefficients. Velocity is
/// limited to +-1 (the unit-cube width); a coordinate that hits a wall is
/// pinned there and its velocity zeroed.
void move_particle(Particle& particle, std::span<const double> leader, double w,
                   std::span<const double> phi1, std::span<const double> phi2);

Swarm pso_init(const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng);

/// One generation: every particle moves, is evaluated and updates its
/// personal best; the leader is refreshed afterwards. Returns false if the
/// budget ran out before the generation finished.
bool pso_step(Swarm& swarm, const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng);

// ---------------------------------------------------------------- DE

/// a + mu * (b - c)
std::vector<double> de_mutant(std::span<const double> a, std::span<const double> b,
                              std::span<const double> c, double mu);

/// Binomial crossover: coordinate j comes from the mutant when r[j] <= cr or
/// j == forced_index, otherwise from the target.
std::vector<double> de_crossover(std::span<const double> target, std::span<const double> mutant, double cr,
                                 std::span<const double> r, std::size_t forced_index);

/// Greedy one-to-one replacement; ties go to the trial.
inline bool de_accepts(double trial_fitness, double target_fitness) { return trial_fitness <= target_fitness; }

/// Three mutually distinct indices in [0, n), all different from `target`.
std::array<std::size_t, 3> de_pick_donors(std::size_t target, std::size_t n, Rng& rng);

bool de_step(Population& pop, const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng);

// ---------------------------------------------------------------- GA / ES

/// child_j = beta_j * a_j + (1 - beta_j) * b_j with beta_j ~ U(0,1).
std::vector<double> blend_crossover(std::span<const double> a, std::span<const double> b, Rng& rng);

/// Resets one uniformly chosen coordinate to a uniform value in [0, 1].
void reset_mutation(std::vector<double>& x, Rng& rng);

std::size_t binary_tournament(const Population& pop, Rng& rng);

bool ga_step(Population& pop, const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng);

/// Rank-based survivor selection. Plus: best mu of parents + offspring
/// (parents win ties). Comma: best mu of offspring only.
Population es_select(const Population& parents, const Population& offspring, std::size_t mu,
                     EsSelection selection);

bool es_step(Population& parents, const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng);

// ---------------------------------------------------------------- SA

/// Acceptance probability of a move that worsens fitness by delta > 0:
/// 2 / (1 + exp(delta / T)). Returns 1 for delta <= 0.
double sa_acceptance_probability(double delta, double temperature);

/// Temperature at which a worsening of `mean_delta` is accepted with
/// probability `target_accept`.
double sa_temperature_for(double mean_delta, double target_accept);

/// Initial temperature from probe deltas: inverts the acceptance rule at the
/// mean positive delta; 1.0 when no delta is positive.
double sa_temperature_from_deltas(std::span<const double> deltas, double target_accept);

/// Evaluates `probes` neighbours of `initial` and derives T0 from them.
double sa_init_temperature(const Individual& initial, int probes, double target_accept,
                           ObjectiveHandle& handle, Rng& rng);

struct SaState {
    Individual current;
    double temperature = 1.0;
};

/// One Markov chain of proposals followed by T <- alpha * T.
bool sa_step(SaState& state, const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng);

}  // namespace vdtp
