#include "vdtp/harness/benchmarks.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "vdtp/rng.hpp"

namespace vdtp::harness {

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double rastrigin(std::span<const double> x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return s;
}

std::vector<std::string> benchmark_names() { return {"sphere", "rosenbrock", "rastrigin"}; }

Objective benchmark_objective(std::string_view name) {
    if (name == "sphere") return [](std::span<const double> x, std::size_t) { return sphere(x); };
    if (name == "rosenbrock") return [](std::span<const double> x, std::size_t) { return rosenbrock(x); };
    if (name == "rastrigin") return [](std::span<const double> x, std::size_t) { return rastrigin(x); };
    throw ConfigError(fmt::format("unknown benchmark function '{}' (expected sphere, rosenbrock or rastrigin)", name));
}

double random_search(const Objective& objective, const Bounds& bounds, std::size_t budget, std::uint64_t seed) {
    Rng rng(derive_seed(seed, {stream::kOptimizer}));
    std::vector<double> x(bounds.dims());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= budget; ++k) {
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = rng.uniform(bounds.lower()[j], bounds.upper()[j]);
        best = std::min(best, objective(x, k));
    }
    return best;
}

}  // namespace vdtp::harness
