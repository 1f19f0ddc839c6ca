#pragma once

#include <span>
#include <vector>

namespace vdtp::stats {

struct SampleSummary {
    double mean = 0.0;
    double std_dev = 0.0;  // n - 1 denominator; 0 for a singleton
    double minimum = 0.0;
    double median = 0.0;
    double maximum = 0.0;

    friend bool operator==(const SampleSummary&, const SampleSummary&) = default;
};

/// Throws std::invalid_argument on an empty sample.
SampleSummary summarize(std::span<const double> sample);

/// Ranks 1..n with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

struct PairedTestResult {
    double statistic = 0.0;  // W+, the rank sum of positive differences a - b
    double p_value = 1.0;    // two-sided
    int n_effective = 0;     // pairs left after dropping zero differences
    bool significant_at_05 = false;
    bool exact = false;
};

/// Largest n_effective for which the null distribution is enumerated exactly.
inline constexpr int kWilcoxonExactLimit = 12;

/// Wilcoxon signed-rank test on paired samples. Zero differences are dropped
/// and tied |d| share average ranks. Exact null distribution for
/// n_effective <= kWilcoxonExactLimit, otherwise the normal approximation with
/// tie and continuity corrections. Throws std::invalid_argument on length
/// mismatch or fewer than two pairs.
PairedTestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p-value for the given signed-rank magnitudes: the
/// probability, over all 2^n sign assignments, of |W+ - E[W+]| at least as
/// large as observed.
double wilcoxon_exact_p(std::span<const double> ranks, double w_plus);

/// Normal approximation with tie correction and continuity correction.
double wilcoxon_normal_p(std::span<const double> ranks, double w_plus);

struct FriedmanTable {
    std::vector<double> mean_ranks;  // per algorithm (column), 1 = best
    int blocks = 0;
    double statistic = 0.0;  // Friedman chi-square, or Iman-Davenport F
    double p_value = 1.0;
    bool iman_davenport = false;
};

/// `results[block][algorithm]`, lower is better. Throws std::invalid_argument
/// for ragged input, fewer than two blocks, or fewer than two algorithms.
FriedmanTable friedman_ranks(const std::vector<std::vector<double>>& results, bool iman_davenport = false);

}  // namespace vdtp::stats
