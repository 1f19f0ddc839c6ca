#include "vdtp/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vdtp {

namespace {

std::vector<double> uniform_point(std::size_t dims, Rng& rng) {
    std::vector<double> x(dims);
    for (double& v : x) v = rng.uniform();
    return x;
}

void clamp_unit(std::vector<double>& x) {
    for (double& v : x) v = std::clamp(v, 0.0, 1.0);
}

}  // namespace

Population init_population(std::size_t size, ObjectiveHandle& handle, Rng& rng) {
    Population pop;
    pop.reserve(size);
    for (std::size_t i = 0; i < size && !handle.exhausted(); ++i) {
        Individual ind{uniform_point(handle.dims(), rng), 0.0};
        ind.fitness = handle.evaluate(ind.position);
        pop.push_back(std::move(ind));
    }
    return pop;
}

std::size_t best_index(const Population& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].fitness < pop[best].fitness) best = i;
    return best;
}

std::size_t worst_index(const Population& pop) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].fitness > pop[worst].fitness) worst = i;
    return worst;
}

// ---------------------------------------------------------------- PSO

double pso_velocity(double v, double x, double p, double b, double w, double phi1, double phi2) {
    return w * v + phi1 * (p - x) + phi2 * (b - x);
}

void move_particle(Particle& particle, std::span<const double> leader, double w, std::span<const double> phi1,
                   std::span<const double> phi2) {
    for (std::size_t j = 0; j < particle.position.size(); ++j) {
        double v = pso_velocity(particle.velocity[j], particle.position[j], particle.personal_best[j], leader[j], w,
                                phi1[j], phi2[j]);
        v = std::clamp(v, -1.0, 1.0);
        double x = particle.position[j] + v;
        if (x < 0.0 || x > 1.0) {
            x = std::clamp(x, 0.0, 1.0);
            v = 0.0;
        }
        particle.velocity[j] = v;
        particle.position[j] = x;
    }
}

Swarm pso_init(const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng) {
    Swarm swarm;
    const std::size_t dims = handle.dims();
    for (int i = 0; i < params.population_size && !handle.exhausted(); ++i) {
        Particle p;
        p.position = uniform_point(dims, rng);
        p.velocity.resize(dims);
        for (std::size_t j = 0; j < dims; ++j) p.velocity[j] = rng.uniform() - p.position[j];
        p.personal_best = p.position;
        p.personal_best_fitness = handle.evaluate(p.position);
        swarm.particles.push_back(std::move(p));
    }
    const auto best = std::min_element(swarm.particles.begin(), swarm.particles.end(),
                                       [](const Particle& a, const Particle& b) {
                                           return a.personal_best_fitness < b.personal_best_fitness;
                                       });
    swarm.leader = best->personal_best;
    swarm.leader_fitness = best->personal_best_fitness;
    return swarm;
}

bool pso_step(Swarm& swarm, const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng) {
    const std::size_t dims = handle.dims();
    std::vector<double> phi1(dims), phi2(dims);
    bool complete = true;
    for (Particle& p : swarm.particles) {
        if (handle.exhausted()) {
            complete = false;
            break;
        }
        for (std::size_t j = 0; j < dims; ++j) {
            phi1[j] = 2.0 * rng.uniform();
            phi2[j] = 2.0 * rng.uniform();
        }
        move_particle(p, swarm.leader, params.w, phi1, phi2);
        const double f = handle.evaluate(p.position);
        if (f < p.personal_best_fitness) {
            p.personal_best = p.position;
            p.personal_best_fitness = f;
        }
    }
    for (const Particle& p : swarm.particles) {
        if (p.personal_best_fitness < swarm.leader_fitness) {
            swarm.leader = p.personal_best;
            swarm.leader_fitness = p.personal_best_fitness;
        }
    }
    return complete;
}

// ---------------------------------------------------------------- DE

std::vector<double> de_mutant(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                              double mu) {
    std::vector<double> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] + mu * (b[j] - c[j]);
    return out;
}

std::vector<double> de_crossover(std::span<const double> target, std::span<const double> mutant, double cr,
                                 std::span<const double> r, std::size_t forced_index) {
    std::vector<double> out(target.size());
    for (std::size_t j = 0; j < target.size(); ++j)
        out[j] = (r[j] <= cr || j == forced_index) ? mutant[j] : target[j];
    return out;
}

std::array<std::size_t, 3> de_pick_donors(std::size_t target, std::size_t n, Rng& rng) {
    std::array<std::size_t, 3> r{};
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t c;
        do {
            c = rng.index(n);
        } while (c == target || std::find(r.begin(), r.begin() + k, c) != r.begin() + k);
        r[k] = c;
    }
    return r;
}

bool de_step(Population& pop, const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng) {
    const std::size_t n = pop.size();
    const std::size_t dims = handle.dims();
    Population next = pop;
    std::vector<double> r(dims);
    bool complete = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (handle.exhausted()) {
            complete = false;
            break;
        }
        const auto [r1, r2, r3] = de_pick_donors(i, n, rng);
        const auto mutant = de_mutant(pop[r1].position, pop[r2].position, pop[r3].position, params.mu_de);
        for (double& v : r) v = rng.uniform();
        const std::size_t jr = rng.index(dims);
        auto trial = de_crossover(pop[i].position, mutant, params.cr, r, jr);
        clamp_unit(trial);
        const double f = handle.evaluate(trial);
        if (de_accepts(f, pop[i].fitness)) next[i] = {std::move(trial), f};
    }
    pop = std::move(next);
    return complete;
}

// ---------------------------------------------------------------- GA / ES

std::vector<double> blend_crossover(std::span<const double> a, std::span<const double> b, Rng& rng) {
    std::vector<double> child(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double beta = rng.uniform();
        child[j] = beta * a[j] + (1.0 - beta) * b[j];
    }
    return child;
}

void reset_mutation(std::vector<double>& x, Rng& rng) {
    const std::size_t j = rng.index(x.size());
    x[j] = rng.uniform();
}

std::size_t binary_tournament(const Population& pop, Rng& rng) {
    const std::size_t a = rng.index(pop.size());
    const std::size_t b = rng.index(pop.size());
    return pop[b].fitness < pop[a].fitness ? b : a;
}

namespace {

std::vector<double> ga_offspring(const Population& pop, const OptimizerParams& params, Rng& rng) {
    const Individual& pa = pop[binary_tournament(pop, rng)];
    std::vector<double> child;
    if (rng.bernoulli(params.p_cross)) {
        const Individual& pb = pop[binary_tournament(pop, rng)];
        child = blend_crossover(pa.position, pb.position, rng);
    } else {
        child = pa.position;
    }
    if (rng.bernoulli(params.p_mut)) reset_mutation(child, rng);
    return child;
}

}  // namespace

bool ga_step(Population& pop, const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng) {
    const std::size_t n = pop.size();
    if (params.ga_variant == GaVariant::SteadyState) {
        for (std::size_t k = 0; k < n; ++k) {
            if (handle.exhausted()) return false;
            std::vector<double> child = ga_offspring(pop, params, rng);
            const double f = handle.evaluate(child);
            const std::size_t worst = worst_index(pop);
            if (f < pop[worst].fitness) pop[worst] = {std::move(child), f};
        }
        return true;
    }

    Population offspring;
    offspring.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (handle.exhausted()) return false;
        std::vector<double> child = ga_offspring(pop, params, rng);
        const double f = handle.evaluate(child);
        offspring.push_back({std::move(child), f});
    }
    // Elitism of one: the current best survives unless an offspring matches it.
    const Individual& elite = pop[best_index(pop)];
    if (elite.fitness < offspring[best_index(offspring)].fitness) offspring[worst_index(offspring)] = elite;
    pop = std::move(offspring);
    return true;
}

Population es_select(const Population& parents, const Population& offspring, std::size_t mu,
                     EsSelection selection) {
    Population pool;
    if (selection == EsSelection::Plus) pool = parents;
    pool.insert(pool.end(), offspring.begin(), offspring.end());
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
    pool.resize(std::min(mu, pool.size()));
    return pool;
}

bool es_step(Population& parents, const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng) {
    const std::size_t lambda = static_cast<std::size_t>(params.lambda_es);
    Population offspring;
    offspring.reserve(lambda);
    for (std::size_t k = 0; k < lambda; ++k) {
        if (handle.exhausted()) return false;
        const std::size_t a = rng.index(parents.size());
        std::vector<double> child;
        if (parents.size() > 1 && rng.bernoulli(params.p_cross)) {
            std::size_t b = rng.index(parents.size() - 1);
            if (b >= a) ++b;
            child = blend_crossover(parents[a].position, parents[b].position, rng);
        } else {
            child = parents[a].position;
        }
        if (rng.bernoulli(params.p_mut)) reset_mutation(child, rng);
        const double f = handle.evaluate(child);
        offspring.push_back({std::move(child), f});
    }
    parents = es_select(parents, offspring, static_cast<std::size_t>(params.mu_es), params.es_selection);
    return true;
}

// ---------------------------------------------------------------- SA

double sa_acceptance_probability(double delta, double temperature) {
    if (delta <= 0.0) return 1.0;
    const double z = delta / temperature;
    if (z > 700.0) return 0.0;
    return 2.0 / (1.0 + std::exp(z));
}

double sa_temperature_for(double mean_delta, double target_accept) {
    return mean_delta / std::log(2.0 / target_accept - 1.0);
}

double sa_temperature_from_deltas(std::span<const double> deltas, double target_accept) {
    double sum = 0.0;
    std::size_t count = 0;
    for (double d : deltas) {
        if (d > 0.0 && std::isfinite(d)) {
            sum += d;
            ++count;
        }
    }
    if (count == 0) return 1.0;
    return sa_temperature_for(sum / static_cast<double>(count), target_accept);
}

double sa_init_temperature(const Individual& initial, int probes, double target_accept, ObjectiveHandle& handle,
                           Rng& rng) {
    std::vector<double> deltas;
    for (int k = 0; k < probes && !handle.exhausted(); ++k) {
        std::vector<double> neighbour = initial.position;
        reset_mutation(neighbour, rng);
        deltas.push_back(handle.evaluate(neighbour) - initial.fitness);
    }
    return sa_temperature_from_deltas(deltas, target_accept);
}

bool sa_step(SaState& state, const OptimizerParams& params, ObjectiveHandle& handle, Rng& rng) {
    for (int k = 0; k < params.markov_chain_length; ++k) {
        if (handle.exhausted()) return false;
        std::vector<double> neighbour = state.current.position;
        reset_mutation(neighbour, rng);
        const double f = handle.evaluate(neighbour);
        const double delta = f - state.current.fitness;
        // Always draw, so the stream does not depend on the accept branch.
        const double u = rng.uniform();
        if (delta <= 0.0 || u < sa_acceptance_probability(delta, state.temperature))
            state.current = {std::move(neighbour), f};
    }
    state.temperature *= params.alpha_temp;
    return true;
}

}  // namespace vdtp
