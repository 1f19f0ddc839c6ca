#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "vdtp/algorithms.hpp"
#include "vdtp/harness/benchmarks.hpp"
#include "vdtp/optimizer.hpp"

using namespace vdtp;

namespace {

double sphere(std::span<const double> x, std::size_t) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

const Bounds kBox = Bounds::cube(3, -5.0, 5.0);

}  // namespace

TEST(Pso, VelocityMatchesHandOracle) {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const double v = rng.uniform(-1, 1), x = rng.uniform(), p = rng.uniform(), b = rng.uniform();
        const double w = rng.uniform(), f1 = 2 * rng.uniform(), f2 = 2 * rng.uniform();
        const long double expect = (long double)w * v + (long double)f1 * (p - x) + (long double)f2 * (b - x);
        const double scale = std::abs(w * v) + std::abs(f1 * (p - x)) + std::abs(f2 * (b - x));
        EXPECT_LE(std::abs(pso_velocity(v, x, p, b, w, f1, f2) - (double)expect), 1e-12 * std::max(scale, 1e-300));
    }
}

TEST(Pso, MoveAddsVelocityInsideTheCube) {
    Particle pt;
    pt.position = {0.5, 0.5};
    pt.velocity = {0.1, -0.1};
    pt.personal_best = {0.6, 0.4};
    const std::vector<double> leader{0.7, 0.3};
    const std::vector<double> phi1{1.0, 0.5}, phi2{0.2, 1.5};
    move_particle(pt, leader, 0.5, phi1, phi2);
    const double v0 = 0.5 * 0.1 + 1.0 * 0.1 + 0.2 * 0.2;
    const double v1 = 0.5 * -0.1 + 0.5 * -0.1 + 1.5 * -0.2;
    EXPECT_NEAR(pt.velocity[0], v0, 1e-15);
    EXPECT_NEAR(pt.velocity[1], v1, 1e-15);
    EXPECT_NEAR(pt.position[0], 0.5 + v0, 1e-15);
    EXPECT_NEAR(pt.position[1], 0.5 + v1, 1e-15);
}

TEST(Pso, WallContactPinsAndStops) {
    Particle pt;
    pt.position = {0.9};
    pt.velocity = {0.0};
    pt.personal_best = {1.0};
    const std::vector<double> leader{1.0}, phi{2.0};
    move_particle(pt, leader, 0.5, phi, phi);
    EXPECT_EQ(pt.position[0], 1.0);
    EXPECT_EQ(pt.velocity[0], 0.0);
}

TEST(Pso, VelocityLimitedToCubeWidth) {
    Particle pt;
    pt.position = {0.5};
    pt.velocity = {5.0};
    pt.personal_best = {0.5};
    const std::vector<double> leader{0.5}, phi{0.0};
    move_particle(pt, leader, 1.0, phi, phi);
    EXPECT_LE(std::abs(pt.velocity[0]), 1.0);
    EXPECT_GE(pt.position[0], 0.0);
    EXPECT_LE(pt.position[0], 1.0);
}

TEST(De, MutantMatchesHandOracle) {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> a(3), b(3), c(3);
        for (int j = 0; j < 3; ++j) a[j] = rng.uniform(), b[j] = rng.uniform(), c[j] = rng.uniform();
        const double mu = rng.uniform(0.0, 2.0);
        const auto m = de_mutant(a, b, c, mu);
        for (int j = 0; j < 3; ++j) {
            const double expect = a[j] + mu * (b[j] - c[j]);
            const double scale = std::abs(a[j]) + std::abs(mu * (b[j] - c[j]));
            EXPECT_LE(std::abs(m[j] - expect), 1e-12 * scale);
        }
    }
}

TEST(De, CrossoverRule) {
    const std::vector<double> target{0.1, 0.2, 0.3}, mutant{0.9, 0.8, 0.7};
    EXPECT_EQ(de_crossover(target, mutant, 0.0, std::vector<double>{0.5, 0.5, 0.5}, 1),
              (std::vector<double>{0.1, 0.8, 0.3}));
    EXPECT_EQ(de_crossover(target, mutant, 1.0, std::vector<double>{0.5, 0.5, 0.5}, 0), mutant);
    EXPECT_EQ(de_crossover(target, mutant, 0.5, std::vector<double>{0.5, 0.6, 0.4}, 1),
              (std::vector<double>{0.9, 0.8, 0.7}));
    EXPECT_EQ(de_crossover(target, mutant, 0.5, std::vector<double>{0.51, 0.6, 0.4}, 1),
              (std::vector<double>{0.1, 0.8, 0.7}));
}

TEST(De, CrossoverAlwaysTakesForcedCoordinate) {
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        const std::vector<double> target{0.0, 0.0, 0.0, 0.0}, mutant{1.0, 1.0, 1.0, 1.0};
        std::vector<double> r(4);
        for (double& v : r) v = rng.uniform();
        const std::size_t forced = rng.index(4);
        const auto u = de_crossover(target, mutant, 0.0, r, forced);
        EXPECT_EQ(u[forced], 1.0);
    }
}

TEST(De, AcceptanceKeepsTiesForTrial) {
    EXPECT_TRUE(de_accepts(1.0, 1.0));
    EXPECT_TRUE(de_accepts(0.5, 1.0));
    EXPECT_FALSE(de_accepts(1.5, 1.0));
}

TEST(De, DonorsAreDistinct) {
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 4 + rng.index(20), t = rng.index(n);
        const auto d = de_pick_donors(t, n, rng);
        std::set<std::size_t> s(d.begin(), d.end());
        s.insert(t);
        EXPECT_EQ(s.size(), 4u);
        for (auto x : d) EXPECT_LT(x, n);
    }
}

TEST(Ga, BlendCrossoverStaysBetweenParents) {
    Rng rng(4);
    for (int i = 0; i < 500; ++i) {
        const std::vector<double> a{rng.uniform(), rng.uniform()}, b{rng.uniform(), rng.uniform()};
        const auto c = blend_crossover(a, b, rng);
        for (int j = 0; j < 2; ++j) {
            EXPECT_GE(c[j], std::min(a[j], b[j]) - 1e-15);
            EXPECT_LE(c[j], std::max(a[j], b[j]) + 1e-15);
        }
    }
}

TEST(Ga, ResetMutationChangesOneGene) {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> x{0.25, 0.25, 0.25};
        reset_mutation(x, rng);
        int changed = 0;
        for (double v : x) {
            changed += v != 0.25;
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
        EXPECT_LE(changed, 1);
    }
}

TEST(Ga, TournamentNeverPicksTheWorstOfTwoDistinct) {
    Population pop{{{0.0}, 1.0}, {{0.0}, 2.0}};
    Rng rng(1);
    int picks_best = 0;
    for (int i = 0; i < 1000; ++i) picks_best += binary_tournament(pop, rng) == 0;
    // The worse one can only win against itself (probability 1/4).
    EXPECT_GT(picks_best, 650);
}

TEST(Ga, GenerationalKeepsTheElite) {
    for (GaVariant variant : {GaVariant::Generational, GaVariant::SteadyState}) {
        OptimizerParams p = OptimizerParams::defaults(Algorithm::GA);
        p.ga_variant = variant;
        ObjectiveHandle h(sphere, kBox, 1000);
        Rng rng(12);
        Population pop = init_population(20, h, rng);
        double best = pop[best_index(pop)].fitness;
        while (ga_step(pop, p, h, rng)) {
            const double now = pop[best_index(pop)].fitness;
            EXPECT_LE(now, best);
            best = now;
        }
    }
}

TEST(Es, SelectionPlusAndComma) {
    const Population parents{{{0.1}, 1.0}, {{0.2}, 5.0}};
    const Population offspring{{{0.3}, 3.0}, {{0.4}, 1.0}, {{0.5}, 4.0}};
    const auto plus = es_select(parents, offspring, 2, EsSelection::Plus);
    ASSERT_EQ(plus.size(), 2u);
    EXPECT_EQ(plus[0].position[0], 0.1);  // parent wins the tie at 1.0
    EXPECT_EQ(plus[1].position[0], 0.4);
    const auto comma = es_select(parents, offspring, 2, EsSelection::Comma);
    EXPECT_EQ(comma[0].position[0], 0.4);
    EXPECT_EQ(comma[1].position[0], 0.3);
}

TEST(Sa, AcceptanceMatchesHandOracle) {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        const double delta = rng.uniform(1e-6, 5.0), t = rng.uniform(0.01, 5.0);
        const double expect = 2.0 / (1.0 + std::exp(delta / t));
        EXPECT_LE(std::abs(sa_acceptance_probability(delta, t) - expect), 1e-12 * expect);
    }
}

TEST(Sa, AcceptanceLimits) {
    EXPECT_EQ(sa_acceptance_probability(0.0, 1.0), 1.0);
    EXPECT_EQ(sa_acceptance_probability(-3.0, 1.0), 1.0);
    EXPECT_LT(sa_acceptance_probability(1.0, 1e-4), 1e-100);
    EXPECT_GE(sa_acceptance_probability(1e6, 1e-9), 0.0);
    double prev = 1.0;
    for (double d = 0.1; d < 10; d += 0.1) {
        const double p = sa_acceptance_probability(d, 1.0);
        EXPECT_LT(p, prev);
        prev = p;
    }
}

TEST(Sa, MonteCarloFrequencyMatchesProbability) {
    Rng rng(99);
    for (auto [delta, t] : {std::pair{0.5, 1.0}, {2.0, 1.5}, {0.05, 0.01}}) {
        const double p = sa_acceptance_probability(delta, t);
        int hits = 0;
        const int trials = 100000;
        for (int i = 0; i < trials; ++i) hits += rng.uniform() < p;
        EXPECT_NEAR(static_cast<double>(hits) / trials, p, 0.01);
    }
}

TEST(Sa, TemperatureInvertsAcceptance) {
    for (double d : {0.01, 0.5, 3.0}) {
        const double t = sa_temperature_for(d, 0.8);
        EXPECT_NEAR(sa_acceptance_probability(d, t), 0.8, 1e-12);
    }
    EXPECT_EQ(sa_temperature_from_deltas(std::vector<double>{-1.0, 0.0}, 0.8), 1.0);
    const double t = sa_temperature_from_deltas(std::vector<double>{-1.0, 1.0, 3.0}, 0.8);
    EXPECT_NEAR(sa_acceptance_probability(2.0, t), 0.8, 1e-12);
}

TEST(Sa, CoolingIsGeometric) {
    OptimizerParams p = OptimizerParams::defaults(Algorithm::SA);
    ObjectiveHandle h(sphere, kBox, 1000);
    Rng rng(5);
    SaState s;
    s.current = init_population(1, h, rng)[0];
    s.temperature = 2.0;
    ASSERT_TRUE(sa_step(s, p, h, rng));
    EXPECT_DOUBLE_EQ(s.temperature, 2.0 * 0.8);
    ASSERT_TRUE(sa_step(s, p, h, rng));
    EXPECT_DOUBLE_EQ(s.temperature, 2.0 * 0.8 * 0.8);
}

class EveryAlgorithm : public ::testing::TestWithParam<Algorithm> {};

TEST_P(EveryAlgorithm, UsesExactlyTheBudget) {
    const auto p = OptimizerParams::defaults(GetParam());
    for (std::size_t budget : {200u, 1000u, 333u}) {
        const RunRecord r = run(p, sphere, kBox, 4, budget);
        EXPECT_EQ(r.evaluations_used, budget);
        EXPECT_EQ(r.trace.size(), budget);
    }
}

TEST_P(EveryAlgorithm, TraceIsMonotoneAndEndsAtBest) {
    const RunRecord r = run(OptimizerParams::defaults(GetParam()), sphere, kBox, 17, 500);
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        EXPECT_EQ(r.trace[i].evaluation_index, i + 1);
        if (i) EXPECT_LE(r.trace[i].best_fitness, r.trace[i - 1].best_fitness);
    }
    EXPECT_EQ(r.trace.back().best_fitness, r.best_fitness);
    EXPECT_EQ(sphere(r.best_position, 0), r.best_fitness);
    EXPECT_TRUE(kBox.contains(r.best_position));
}

TEST_P(EveryAlgorithm, SameSeedSameRun) {
    const auto p = OptimizerParams::defaults(GetParam());
    const RunRecord a = run(p, sphere, kBox, 77, 300), b = run(p, sphere, kBox, 77, 300);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.best_position, b.best_position);
    const RunRecord c = run(p, sphere, kBox, 78, 300);
    EXPECT_NE(a.trace, c.trace);
}

TEST_P(EveryAlgorithm, BeatsRandomSearchOnSphere) {
    const auto p = OptimizerParams::defaults(GetParam());
    std::vector<double> rs;
    for (int i = 0; i < 10; ++i) rs.push_back(harness::random_search(sphere, kBox, 1000, 1000 + i));
    std::sort(rs.begin(), rs.end());
    const double median = 0.5 * (rs[4] + rs[5]);
    int wins = 0;
    for (int i = 0; i < 10; ++i) wins += run(p, sphere, kBox, i, 1000).best_fitness < median;
    EXPECT_GE(wins, 9);
}

TEST_P(EveryAlgorithm, SphereOverVdtpBoundsDropsBelowOnePercentOfSampleMedian) {
    const Bounds box = Bounds::vdtp();
    std::vector<double> centre(3);
    for (std::size_t d = 0; d < 3; ++d) centre[d] = 0.5 * (box.lower()[d] + box.upper()[d]);
    const Objective shifted = [&](std::span<const double> x, std::size_t) {
        double s = 0.0;
        for (std::size_t d = 0; d < 3; ++d) s += (x[d] - centre[d]) * (x[d] - centre[d]);
        return s;
    };
    Rng rng(2024);
    std::vector<double> samples(1000);
    for (double& v : samples) {
        std::vector<double> x(3);
        for (std::size_t d = 0; d < 3; ++d) x[d] = rng.uniform(box.lower()[d], box.upper()[d]);
        v = shifted(x, 0);
    }
    std::nth_element(samples.begin(), samples.begin() + 500, samples.end());
    const double threshold = 1e-2 * samples[500];
    const auto p = OptimizerParams::defaults(GetParam());
    int hits = 0;
    for (int i = 0; i < 20; ++i) hits += run(p, shifted, box, 500 + i, 1000).best_fitness <= threshold;
    EXPECT_GE(hits, 18);
}

INSTANTIATE_TEST_SUITE_P(All, EveryAlgorithm, ::testing::ValuesIn(kAllAlgorithms),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Generations, CountIncludesInitialPopulation) {
    for (Algorithm a : {Algorithm::PSO, Algorithm::DE, Algorithm::GA}) {
        const auto p = OptimizerParams::defaults(a);
        EXPECT_EQ(run(p, sphere, kBox, 1, 1000).generations_completed, 50);
        const RunRecord one = run(p, sphere, kBox, 1, 20);
        EXPECT_EQ(one.generations_completed, 1);
        EXPECT_EQ(one.trace.size(), 20u);
    }
}

TEST(Generations, ExplicitLimitStopsEarly) {
    auto p = OptimizerParams::defaults(Algorithm::PSO);
    p.generations = 5;
    const RunRecord r = run(p, sphere, kBox, 1, 1000);
    EXPECT_EQ(r.generations_completed, 5);
    EXPECT_EQ(r.evaluations_used, 100u);
}

TEST(Params, ValidationErrors) {
    auto p = OptimizerParams::defaults(Algorithm::GA);
    p.p_cross = 1.5;
    EXPECT_THROW(p.validate(1000), ConfigError);
    auto d = OptimizerParams::defaults(Algorithm::DE);
    d.population_size = 3;
    EXPECT_THROW(d.validate(1000), ConfigError);
    auto e = OptimizerParams::defaults(Algorithm::ES);
    e.lambda_es = e.mu_es;
    EXPECT_THROW(e.validate(1000), ConfigError);
    auto s = OptimizerParams::defaults(Algorithm::SA);
    s.alpha_temp = 0.0;
    EXPECT_THROW(s.validate(1000), ConfigError);
    EXPECT_THROW(OptimizerParams::defaults(Algorithm::PSO).validate(10), ConfigError);
    EXPECT_THROW(p.set("nonsense", "1"), ConfigError);
    EXPECT_THROW(p.set("w", "abc"), ConfigError);
}

TEST(Params, DefaultsMatchPublishedTable) {
    EXPECT_EQ(OptimizerParams::defaults(Algorithm::PSO).w, 0.5);
    const auto de = OptimizerParams::defaults(Algorithm::DE);
    EXPECT_EQ(de.cr, 0.9);
    EXPECT_EQ(de.mu_de, 0.1);
    const auto ga = OptimizerParams::defaults(Algorithm::GA);
    EXPECT_EQ(ga.p_cross, 0.8);
    EXPECT_EQ(ga.p_mut, 0.2);
    const auto es = OptimizerParams::defaults(Algorithm::ES);
    EXPECT_EQ(es.p_cross, 0.9);
    EXPECT_EQ(es.p_mut, 0.1);
    EXPECT_EQ(OptimizerParams::defaults(Algorithm::SA).alpha_temp, 0.8);
    EXPECT_EQ(OptimizerParams::defaults(Algorithm::PSO).population_size, 20);
}

TEST(Algorithms, ParseNames) {
    EXPECT_EQ(parse_algorithm("pso"), Algorithm::PSO);
    EXPECT_EQ(parse_algorithm("Sa"), Algorithm::SA);
    EXPECT_THROW(parse_algorithm("XYZ"), ConfigError);
}
