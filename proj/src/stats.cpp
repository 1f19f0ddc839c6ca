#include "vdtp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>

namespace vdtp::stats {

SampleSummary summarize(std::span<const double> sample) {
    if (sample.empty()) throw std::invalid_argument("summarize: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    SampleSummary s;
    // Sum in sorted order so the result does not depend on input order.
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
        s.std_dev = std::sqrt(ss / static_cast<double>(n - 1));
    }
    s.minimum = sorted.front();
    s.maximum = sorted.back();
    s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return s;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double wilcoxon_exact_p(std::span<const double> ranks, double w_plus) {
    const std::size_t n = ranks.size();
    if (n == 0) return 1.0;
    if (n > 62) throw std::invalid_argument("wilcoxon_exact_p: too many pairs for exact enumeration");
    // Average ranks are multiples of 1/2, so doubled ranks are integers.
    std::vector<std::int64_t> r2(n);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        r2[i] = std::llround(2.0 * ranks[i]);
        total += r2[i];
    }
    const std::int64_t observed = std::llround(2.0 * w_plus);
    // counts[s] = number of sign patterns whose doubled W+ equals s.
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(total) + 1, 0);
    counts[0] = 1;
    std::int64_t reach = 0;
    for (std::int64_t r : r2) {
        for (std::int64_t s = reach; s >= 0; --s)
            if (counts[static_cast<std::size_t>(s)]) counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
        reach += r;
    }
    const std::int64_t dev = std::llabs(2 * observed - total);
    std::uint64_t extreme = 0;
    for (std::int64_t s = 0; s <= total; ++s)
        if (std::llabs(2 * s - total) >= dev) extreme += counts[static_cast<std::size_t>(s)];
    return static_cast<double>(extreme) / std::ldexp(1.0, static_cast<int>(n));
}

double wilcoxon_normal_p(std::span<const double> ranks, double w_plus) {
    const double n = static_cast<double>(ranks.size());
    if (ranks.empty()) return 1.0;
    const double mean = n * (n + 1.0) / 4.0;
    double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
    // Tie correction: sum over tie groups of (t^3 - t) / 48.
    std::vector<double> sorted(ranks.begin(), ranks.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        var -= (t * t * t - t) / 48.0;
        i = j + 1;
    }
    if (!(var > 0.0)) return 1.0;
    const double z = std::max(0.0, std::fabs(w_plus - mean) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

PairedTestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("wilcoxon_signed_rank: samples differ in length");
    if (a.size() < 2) throw std::invalid_argument("wilcoxon_signed_rank: need at least two pairs");

    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    PairedTestResult res;
    res.n_effective = static_cast<int>(diffs.size());
    if (diffs.empty()) {
        res.p_value = 1.0;
        res.exact = true;
        return res;
    }
    std::vector<double> magnitudes(diffs.size());
    std::transform(diffs.begin(), diffs.end(), magnitudes.begin(), [](double d) { return std::fabs(d); });
    const std::vector<double> ranks = average_ranks(magnitudes);
    double w_plus = 0.0;
    for (std::size_t i = 0; i < diffs.size(); ++i)
        if (diffs[i] > 0.0) w_plus += ranks[i];

    res.statistic = w_plus;
    res.exact = res.n_effective <= kWilcoxonExactLimit;
    res.p_value = res.exact ? wilcoxon_exact_p(ranks, w_plus) : wilcoxon_normal_p(ranks, w_plus);
    res.significant_at_05 = res.p_value < 0.05;
    return res;
}

FriedmanTable friedman_ranks(const std::vector<std::vector<double>>& results, bool iman_davenport) {
    if (results.size() < 2) throw std::invalid_argument("friedman_ranks: need at least two blocks");
    const std::size_t k = results.front().size();
    if (k < 2) throw std::invalid_argument("friedman_ranks: need at least two algorithms");
    for (const auto& row : results)
        if (row.size() != k) throw std::invalid_argument("friedman_ranks: ragged result matrix");

    FriedmanTable t;
    t.blocks = static_cast<int>(results.size());
    t.iman_davenport = iman_davenport;
    t.mean_ranks.assign(k, 0.0);
    for (const auto& row : results) {
        const auto r = average_ranks(row);
        for (std::size_t j = 0; j < k; ++j) t.mean_ranks[j] += r[j];
    }
    const double blocks = static_cast<double>(t.blocks);
    const double kk = static_cast<double>(k);
    for (double& r : t.mean_ranks) r /= blocks;

    double ss = 0.0;
    for (double r : t.mean_ranks) ss += (r - (kk + 1.0) / 2.0) * (r - (kk + 1.0) / 2.0);
    const double chi2 = 12.0 * blocks / (kk * (kk + 1.0)) * ss;

    if (!iman_davenport) {
        t.statistic = chi2;
        t.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(kk - 1.0), chi2));
        return t;
    }
    const double denom = blocks * (kk - 1.0) - chi2;
    if (denom <= 0.0) {
        t.statistic = std::numeric_limits<double>::infinity();
        t.p_value = 0.0;
        return t;
    }
    t.statistic = (blocks - 1.0) * chi2 / denom;
    t.p_value = boost::math::cdf(
        boost::math::complement(boost::math::fisher_f(kk - 1.0, (kk - 1.0) * (blocks - 1.0)), t.statistic));
    return t;
}

}  // namespace vdtp::stats
