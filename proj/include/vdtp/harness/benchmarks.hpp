#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vdtp/optimizer.hpp"

namespace vdtp::harness {

double sphere(std::span<const double> x);
double rosenbrock(std::span<const double> x);
double rastrigin(std::span<const double> x);

std::vector<std::string> benchmark_names();

/// Throws ConfigError for names other than sphere, rosenbrock, rastrigin.
Objective benchmark_objective(std::string_view name);

/// Best value found by `budget` uniform samples inside `bounds`.
double random_search(const Objective& objective, const Bounds& bounds, std::size_t budget, std::uint64_t seed);

}  // namespace vdtp::harness
