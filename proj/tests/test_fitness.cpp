#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "vdtp/fitness.hpp"

using namespace vdtp;

namespace {

TransferOutcome one_session(double time, double lost, double kbytes) {
    TransferOutcome o;
    o.transmission_time_s = time;
    o.lost_packets = lost;
    o.data_transferred_kbytes = kbytes;
    o.completed_sessions = 1;
    return o;
}

}  // namespace

TEST(Fitness, HandExample) {
    EXPECT_NEAR(fitness_term(4.0, 1.0, 998.0), 5.0 / 3.0, 1e-15);
    EXPECT_NEAR(aggregate_fitness({one_session(4.0, 1.0, 998.0)}), 5.0 / 3.0, 1e-15);
}

TEST(Fitness, ZeroDataIsGuarded) {
    const double f = fitness_term(3.0, 2.0, 0.0);
    EXPECT_TRUE(std::isfinite(f));
    EXPECT_NEAR(f, 5.0 / 0.30102999566398120, 1e-12);
    EXPECT_EQ(kFitnessC, 2.0);
}

TEST(Fitness, MatchesHandOracle) {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const double t = rng.uniform(0, 100), l = rng.uniform(0, 50), d = rng.uniform(0, 5000);
        const double expect = (t + l) / std::log10(d + 2.0);
        EXPECT_LE(std::abs(fitness_term(t, l, d) - expect), 1e-12 * expect);
    }
}

TEST(Fitness, EqualReplicationsEqualSingle) {
    const auto o = one_session(3.3, 0.4, 1024.0);
    EXPECT_DOUBLE_EQ(aggregate_fitness({o, o}), aggregate_fitness({o}));
}

TEST(Fitness, Monotonicity) {
    Rng rng(23);
    for (int i = 0; i < 10000; ++i) {
        const double t = rng.uniform(0, 100), l = rng.uniform(0, 50), d = rng.uniform(0, 5000);
        const double f = fitness_term(t, l, d);
        const double eps = rng.uniform(1e-3, 10);
        EXPECT_GT(fitness_term(t + eps, l, d), f);
        EXPECT_GT(fitness_term(t, l + eps, d), f);
        if (t + l > 0) EXPECT_LT(fitness_term(t, l, d + eps), f);
    }
}

TEST(Fitness, PermutationInvariant) {
    std::vector<TransferOutcome> reps;
    Rng rng(5);
    for (int i = 0; i < 10; ++i) reps.push_back(one_session(rng.uniform(1, 20), rng.uniform(0, 3), rng.uniform(0, 1024)));
    const double base = aggregate_fitness(reps);
    for (int k = 0; k < 20; ++k) {
        std::reverse(reps.begin(), reps.end());
        std::rotate(reps.begin(), reps.begin() + 3, reps.end());
        EXPECT_NEAR(aggregate_fitness(reps), base, 1e-14 * base);
    }
}

TEST(Fitness, UsesPerSessionData) {
    TransferOutcome o = one_session(2.0, 0.0, 20 * 998.0);
    o.completed_sessions = 20;
    EXPECT_NEAR(aggregate_fitness({o}), 2.0 / 3.0, 1e-15);
}

TEST(Evaluate, ReproducibleAndSized) {
    const Scenario s = preset("Urban");
    const VdtpConfig c{25600, 8, 8};
    const FitnessReport a = evaluate(c, s, 4, 99), b = evaluate(c, s, 4, 99);
    EXPECT_EQ(a.fitness, b.fitness);
    EXPECT_EQ(a.replications, b.replications);
    ASSERT_EQ(a.replications.size(), 4u);
    EXPECT_NE(a.replications[0], a.replications[1]);
    EXPECT_EQ(a.fitness, aggregate_fitness(a.replications));
    EXPECT_GE(a.fitness, 0.0);
    EXPECT_THROW(evaluate(c, s, 0, 1), ConfigError);
}

TEST(Objective, OneEvaluationPerCallWithIndexedSeeds) {
    const Scenario s = preset("Highway");
    const Objective f = make_vdtp_objective(s, 2, 1234);
    const std::vector<double> x{25600, 10, 10};
    EXPECT_EQ(f(x, 3), evaluate({25600, 10, 10}, s, 2, evaluation_seed(1234, 3)).fitness);
    EXPECT_EQ(f(x, 3), f(x, 3));
    EXPECT_NE(f(x, 3), f(x, 4));
}
