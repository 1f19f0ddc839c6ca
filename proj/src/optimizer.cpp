#include "vdtp/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "vdtp/algorithms.hpp"

namespace vdtp {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

double parse_real(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out))
        throw ConfigError(fmt::format("{}: '{}' is not a real number", key, value));
    return out;
}

int parse_int(std::string_view key, std::string_view value) {
    int out = 0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) throw ConfigError(fmt::format("{}: '{}' is not an integer", key, value));
    return out;
}

void require_probability(std::string_view name, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(fmt::format("{} = {} is not a probability in [0,1]", name, p));
}

}  // namespace

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::PSO: return "PSO";
        case Algorithm::DE: return "DE";
        case Algorithm::GA: return "GA";
        case Algorithm::ES: return "ES";
        case Algorithm::SA: return "SA";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    const std::string n = lower(name);
    for (Algorithm a : kAllAlgorithms)
        if (lower(to_string(a)) == n) return a;
    throw ConfigError(fmt::format("unknown algorithm '{}' (expected PSO, DE, GA, ES or SA)", name));
}

OptimizerParams OptimizerParams::defaults(Algorithm algorithm) {
    OptimizerParams p;
    p.algorithm = algorithm;
    switch (algorithm) {
        case Algorithm::GA:
            p.p_cross = 0.8;
            p.p_mut = 0.2;
            break;
        case Algorithm::ES:
            p.p_cross = 0.9;
            p.p_mut = 0.1;
            break;
        default: break;
    }
    return p;
}

void OptimizerParams::validate(std::size_t max_evaluations) const {
    if (max_evaluations < 1) throw ConfigError("max_evaluations must be >= 1");
    if (generations < 0) throw ConfigError("generations must be >= 0");
    require_probability("cr", cr);
    require_probability("p_cross", p_cross);
    require_probability("p_mut", p_mut);
    if (!(w >= 0.0)) throw ConfigError(fmt::format("w = {} must be >= 0", w));

    auto check_population = [&](std::size_t per_generation, std::size_t initial) {
        if (initial > max_evaluations)
            throw ConfigError(fmt::format("budget {} is smaller than the initial population {}", max_evaluations,
                                          initial));
        if (generations > 0 &&
            initial + per_generation * static_cast<std::size_t>(generations - 1) > max_evaluations)
            throw ConfigError(fmt::format("population x generations exceeds the budget of {}", max_evaluations));
    };

    switch (algorithm) {
        case Algorithm::PSO:
        case Algorithm::GA:
            if (population_size < 2) throw ConfigError("population_size must be >= 2");
            check_population(population_size, population_size);
            break;
        case Algorithm::DE:
            if (population_size < 4) throw ConfigError("DE needs population_size >= 4");
            if (!(mu_de > 0.0)) throw ConfigError("mu_de must be > 0");
            check_population(population_size, population_size);
            break;
        case Algorithm::ES:
            if (mu_es < 1) throw ConfigError("mu_es must be >= 1");
            if (lambda_es < mu_es) throw ConfigError("lambda_es must be >= mu_es");
            if (es_selection == EsSelection::Comma && lambda_es <= mu_es)
                throw ConfigError("comma selection needs lambda_es > mu_es");
            check_population(lambda_es, mu_es);
            break;
        case Algorithm::SA:
            if (!(alpha_temp > 0.0 && alpha_temp <= 1.0)) throw ConfigError("alpha_temp must lie in (0,1]");
            if (markov_chain_length < 1) throw ConfigError("markov_chain_length must be >= 1");
            if (sa_probes < 0) throw ConfigError("sa_probes must be >= 0");
            if (!(sa_target_accept > 0.0 && sa_target_accept < 1.0))
                throw ConfigError("sa_target_accept must lie in (0,1)");
            check_population(markov_chain_length, 1);
            break;
    }
}

void OptimizerParams::set(std::string_view key, std::string_view value) {
    const std::string k = lower(key);
    if (k == "population_size") population_size = parse_int(k, value);
    else if (k == "generations") generations = parse_int(k, value);
    else if (k == "w") w = parse_real(k, value);
    else if (k == "cr") cr = parse_real(k, value);
    else if (k == "mu_de" || k == "mutation_factor") mu_de = parse_real(k, value);
    else if (k == "p_cross") p_cross = parse_real(k, value);
    else if (k == "p_mut") p_mut = parse_real(k, value);
    else if (k == "alpha_temp") alpha_temp = parse_real(k, value);
    else if (k == "markov_chain_length") markov_chain_length = parse_int(k, value);
    else if (k == "sa_probes") sa_probes = parse_int(k, value);
    else if (k == "sa_target_accept") sa_target_accept = parse_real(k, value);
    else if (k == "mu_es") mu_es = parse_int(k, value);
    else if (k == "lambda_es") lambda_es = parse_int(k, value);
    else if (k == "ga_variant") {
        const std::string v = lower(value);
        if (v == "generational") ga_variant = GaVariant::Generational;
        else if (v == "steady" || v == "steady_state") ga_variant = GaVariant::SteadyState;
        else throw ConfigError(fmt::format("ga_variant: '{}' (expected generational or steady)", value));
    } else if (k == "es_selection") {
        const std::string v = lower(value);
        if (v == "plus") es_selection = EsSelection::Plus;
        else if (v == "comma") es_selection = EsSelection::Comma;
        else throw ConfigError(fmt::format("es_selection: '{}' (expected plus or comma)", value));
    } else {
        throw ConfigError(fmt::format("unknown optimizer parameter '{}'", key));
    }
}

std::vector<std::pair<std::string, std::string>> OptimizerParams::describe() const {
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&](const char* k, auto v) { out.emplace_back(k, fmt::format("{}", v)); };
    switch (algorithm) {
        case Algorithm::PSO:
            add("population_size", population_size);
            add("w", w);
            break;
        case Algorithm::DE:
            add("population_size", population_size);
            add("cr", cr);
            add("mu_de", mu_de);
            break;
        case Algorithm::GA:
            add("population_size", population_size);
            add("p_cross", p_cross);
            add("p_mut", p_mut);
            add("ga_variant", ga_variant == GaVariant::Generational ? "generational" : "steady");
            break;
        case Algorithm::ES:
            add("mu_es", mu_es);
            add("lambda_es", lambda_es);
            add("p_cross", p_cross);
            add("p_mut", p_mut);
            add("es_selection", es_selection == EsSelection::Plus ? "plus" : "comma");
            break;
        case Algorithm::SA:
            add("alpha_temp", alpha_temp);
            add("markov_chain_length", markov_chain_length);
            add("sa_probes", sa_probes);
            add("sa_target_accept", sa_target_accept);
            break;
    }
    if (generations > 0) add("generations", generations);
    return out;
}

ObjectiveHandle::ObjectiveHandle(Objective objective, Bounds bounds, std::size_t max_evaluations)
    : objective_(std::move(objective)),
      bounds_(std::move(bounds)),
      max_evaluations_(max_evaluations),
      best_fitness_(std::numeric_limits<double>::infinity()),
      start_(std::chrono::steady_clock::now()) {
    trace_.reserve(max_evaluations_);
}

double ObjectiveHandle::evaluate(std::span<const double> unit_x) {
    if (exhausted()) throw std::logic_error("evaluation budget exhausted");
    const std::vector<double> x = bounds_.from_unit(unit_x);
    ++used_;
    double f = objective_(x, used_);
    if (std::isnan(f)) f = std::numeric_limits<double>::infinity();
    if (f < best_fitness_ || best_position_.empty()) {
        best_fitness_ = f;
        best_position_ = x;
        best_index_ = used_;
        time_to_best_s_ = elapsed_s();
    }
    trace_.push_back({used_, best_fitness_});
    return f;
}

double ObjectiveHandle::elapsed_s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

RunRecord run(const OptimizerParams& params, const Objective& objective, const Bounds& bounds,
              std::uint64_t seed, std::size_t max_evaluations) {
    params.validate(max_evaluations);
    ObjectiveHandle handle(objective, bounds, max_evaluations);
    Rng rng(derive_seed(seed, {stream::kOptimizer}));

    int generations = 1;
    auto more = [&] { return !handle.exhausted() && (params.generations == 0 || generations < params.generations); };
    auto drive = [&](auto&& step) {
        while (more()) {
            if (!step()) break;
            ++generations;
        }
    };

    switch (params.algorithm) {
        case Algorithm::PSO: {
            Swarm swarm = pso_init(params, handle, rng);
            drive([&] { return pso_step(swarm, params, handle, rng); });
            break;
        }
        case Algorithm::DE: {
            Population pop = init_population(params.population_size, handle, rng);
            drive([&] { return de_step(pop, params, handle, rng); });
            break;
        }
        case Algorithm::GA: {
            Population pop = init_population(params.population_size, handle, rng);
            drive([&] { return ga_step(pop, params, handle, rng); });
            break;
        }
        case Algorithm::ES: {
            Population parents = init_population(params.mu_es, handle, rng);
            drive([&] { return es_step(parents, params, handle, rng); });
            break;
        }
        case Algorithm::SA: {
            Population init = init_population(1, handle, rng);
            SaState state{init.front(), 1.0};
            state.temperature =
                sa_init_temperature(state.current, params.sa_probes, params.sa_target_accept, handle, rng);
            drive([&] { return sa_step(state, params, handle, rng); });
            break;
        }
    }

    RunRecord rec;
    rec.algorithm = params.algorithm;
    rec.best_position = handle.best_position();
    rec.best_fitness = handle.best_fitness();
    rec.best_evaluation_index = handle.best_evaluation_index();
    rec.trace = handle.trace();
    rec.evaluations_used = handle.used();
    rec.generations_completed = generations;
    rec.wall_time_s = handle.elapsed_s();
    rec.time_to_best_s = handle.time_to_best_s();
    rec.seed = seed;
    return rec;
}

}  // namespace vdtp
