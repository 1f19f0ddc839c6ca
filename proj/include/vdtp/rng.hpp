#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace vdtp {

/// SplitMix64 finalizer. Used to turn structured seed material into
/// well-separated 64-bit stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives a child seed from a parent seed and a list of integer tags.
/// derive_seed(s, {a, b}) differs from derive_seed(s, {b, a}).
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::initializer_list<std::uint64_t> tags) noexcept {
    std::uint64_t h = splitmix64(parent);
    for (std::uint64_t t : tags) h = splitmix64(h ^ splitmix64(t + 0x632BE59BD9B4E019ULL));
    return h;
}

// Stream tags for hierarchical seed derivation.
namespace stream {
inline constexpr std::uint64_t kRun = 1;
inline constexpr std::uint64_t kOptimizer = 2;
inline constexpr std::uint64_t kEvaluation = 3;
inline constexpr std::uint64_t kReplication = 4;
inline constexpr std::uint64_t kSession = 5;
}  // namespace stream

/// Seeded random stream. All variates are built from raw mt19937_64 output
/// so that sequences are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [0, n). n must be positive.
    std::size_t index(std::size_t n) {
        const std::uint64_t range = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % range;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return static_cast<std::size_t>(r % range);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Exponential variate with the given mean.
    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace vdtp
