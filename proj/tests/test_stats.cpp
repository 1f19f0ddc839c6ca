#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "vdtp/rng.hpp"
#include "vdtp/stats.hpp"

using namespace vdtp;
using namespace vdtp::stats;

namespace {

// Two-sided p by listing every sign pattern; ranks are doubled so they are integers.
double brute_force_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) d.push_back(a[i] - b[i]);
    const std::size_t n = d.size();
    if (n == 0) return 1.0;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return std::abs(d[x]) < std::abs(d[y]); });
    std::vector<long> r2(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
        for (std::size_t k = i; k <= j; ++k) r2[order[k]] = static_cast<long>(i + j + 2);  // 2 * average rank
        i = j + 1;
    }
    const long total = std::accumulate(r2.begin(), r2.end(), 0L);
    long observed = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (d[i] > 0) observed += r2[i];
    const long dev = std::labs(2 * observed - total);
    long hits = 0;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        long w = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1UL << i)) w += r2[i];
        hits += std::labs(2 * w - total) >= dev;
    }
    return static_cast<double>(hits) / static_cast<double>(1UL << n);
}

}  // namespace

TEST(Summarize, Examples) {
    const auto s = summarize(std::vector<double>{1, 2, 3});
    EXPECT_EQ(s.mean, 2.0);
    EXPECT_EQ(s.median, 2.0);
    EXPECT_EQ(s.minimum, 1.0);
    EXPECT_EQ(s.maximum, 3.0);
    EXPECT_EQ(s.std_dev, 1.0);
    const auto one = summarize(std::vector<double>{5});
    EXPECT_EQ(one, (SampleSummary{5, 0, 5, 5, 5}));
    EXPECT_EQ(summarize(std::vector<double>{2, 2, 2, 2}).std_dev, 0.0);
    EXPECT_EQ(summarize(std::vector<double>{4, 1, 3, 2}).median, 2.5);
    EXPECT_THROW(summarize(std::vector<double>{}), std::invalid_argument);
}

TEST(Summarize, PermutationInvariant) {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> x(1 + rng.index(40));
        for (double& v : x) v = rng.uniform(-1e3, 1e3);
        const auto base = summarize(x);
        for (int k = 0; k < 5; ++k) {
            for (std::size_t i = x.size() - 1; i > 0; --i) std::swap(x[i], x[rng.index(i + 1)]);
            EXPECT_EQ(summarize(x), base);
        }
    }
}

TEST(Ranks, AverageTies) {
    EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 20, 5}), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(Wilcoxon, IdenticalSamples) {
    const std::vector<double> a{1, 2, 3, 4};
    const auto r = wilcoxon_signed_rank(a, a);
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_EQ(r.n_effective, 0);
    EXPECT_FALSE(r.significant_at_05);
}

TEST(Wilcoxon, AllShiftedBySameAmount) {
    const std::vector<double> a{1, 2, 3, 4, 5, 6};
    std::vector<double> b = a;
    for (double& v : b) v += 10;
    const auto r = wilcoxon_signed_rank(a, b);
    EXPECT_EQ(r.p_value, 0.03125);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_TRUE(r.significant_at_05);
}

TEST(Wilcoxon, ExactEqualsEnumeration) {
    Rng rng(42);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng.index(7);  // 2..8
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Coarse values produce ties and zero differences.
            a[i] = static_cast<double>(rng.index(6));
            b[i] = static_cast<double>(rng.index(6));
        }
        EXPECT_EQ(wilcoxon_signed_rank(a, b).p_value, brute_force_p(a, b));
    }
}

TEST(Wilcoxon, Antisymmetric) {
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng.index(30);
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = rng.uniform(), b[i] = rng.uniform();
        const auto ab = wilcoxon_signed_rank(a, b), ba = wilcoxon_signed_rank(b, a);
        EXPECT_EQ(ab.p_value, ba.p_value);
        EXPECT_EQ(ab.n_effective, ba.n_effective);
    }
}

TEST(Wilcoxon, ExactAndNormalAgreeAtTwelve) {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> a(12), b(12);
        for (int i = 0; i < 12; ++i) a[i] = rng.uniform(), b[i] = rng.uniform() + 0.2 * rng.uniform();
        std::vector<double> d(12);
        for (int i = 0; i < 12; ++i) d[i] = std::abs(a[i] - b[i]);
        const auto ranks = average_ranks(d);
        double w = 0;
        for (int i = 0; i < 12; ++i)
            if (a[i] > b[i]) w += ranks[i];
        EXPECT_NEAR(wilcoxon_exact_p(ranks, w), wilcoxon_normal_p(ranks, w), 0.02);
    }
}

TEST(Wilcoxon, LargeSampleUsesNormal) {
    std::vector<double> a(30), b(30);
    for (int i = 0; i < 30; ++i) a[i] = i, b[i] = i + 1 + 0.01 * i;
    const auto r = wilcoxon_signed_rank(a, b);
    EXPECT_FALSE(r.exact);
    EXPECT_LT(r.p_value, 1e-5);
}

TEST(Wilcoxon, InputErrors) {
    EXPECT_THROW(wilcoxon_signed_rank(std::vector<double>{1, 2}, std::vector<double>{1}), std::invalid_argument);
    EXPECT_THROW(wilcoxon_signed_rank(std::vector<double>{1}, std::vector<double>{2}), std::invalid_argument);
}

TEST(Friedman, UnanimousWinner) {
    const auto t = friedman_ranks({{0.1, 0.5, 0.9}, {0.2, 0.3, 0.4}, {1.0, 2.0, 3.0}});
    EXPECT_EQ(t.mean_ranks, (std::vector<double>{1, 2, 3}));
    EXPECT_EQ(t.blocks, 3);
}

TEST(Friedman, OneWinEach) {
    const auto t = friedman_ranks({{1, 2}, {2, 1}});
    EXPECT_EQ(t.mean_ranks, (std::vector<double>{1.5, 1.5}));
}

TEST(Friedman, HandTableFourByThree) {
    const auto t = friedman_ranks({{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {1, 2, 3}});
    EXPECT_EQ(t.mean_ranks, (std::vector<double>{1.25, 2.0, 2.75}));
    // 12 / (4*3*4) * (5^2 + 8^2 + 11^2) - 3*4*4
    EXPECT_NEAR(t.statistic, 4.5, 1e-12);
    EXPECT_NEAR(t.p_value, std::exp(-4.5 / 2), 1e-12);
}

TEST(Friedman, HandTableWithTies) {
    const auto t = friedman_ranks({{1, 1, 2}, {3, 2, 1}, {5, 5, 5}});
    EXPECT_NEAR(t.mean_ranks[0], 6.5 / 3, 1e-15);
    EXPECT_NEAR(t.mean_ranks[1], 5.5 / 3, 1e-15);
    EXPECT_NEAR(t.mean_ranks[2], 2.0, 1e-15);
}

TEST(Friedman, ConstantResultsAllEqual) {
    const auto t = friedman_ranks(std::vector<std::vector<double>>(5, std::vector<double>(4, 1.0)));
    for (double r : t.mean_ranks) EXPECT_EQ(r, 2.5);
    EXPECT_EQ(t.p_value, 1.0);
}

TEST(Friedman, RankSumIdentity) {
    Rng rng(9);
    for (int t = 0; t < 100; ++t) {
        const std::size_t blocks = 2 + rng.index(30), k = 2 + rng.index(6);
        std::vector<std::vector<double>> m(blocks, std::vector<double>(k));
        for (auto& row : m)
            for (double& v : row) v = static_cast<double>(rng.index(5));
        const auto table = friedman_ranks(m);
        const double sum = std::accumulate(table.mean_ranks.begin(), table.mean_ranks.end(), 0.0);
        EXPECT_NEAR(sum, k * (k + 1) / 2.0, 1e-9);
    }
}

TEST(Friedman, ImanDavenportVariant) {
    const auto t = friedman_ranks({{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {1, 2, 3}}, true);
    EXPECT_TRUE(t.iman_davenport);
    // (n-1) chi2 / (n(k-1) - chi2) = 3 * 4.5 / (8 - 4.5)
    EXPECT_NEAR(t.statistic, 13.5 / 3.5, 1e-12);
}

TEST(Friedman, InputErrors) {
    EXPECT_THROW(friedman_ranks({{1, 2}, {1}}), std::invalid_argument);
    EXPECT_THROW(friedman_ranks({{1, 2}}), std::invalid_argument);
    EXPECT_THROW(friedman_ranks({{1}, {2}}), std::invalid_argument);
}
