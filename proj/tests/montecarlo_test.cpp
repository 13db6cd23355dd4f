#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ratshare/montecarlo.hpp"
#include "ratshare/suites.hpp"

namespace ratshare {
namespace {

TEST(SimulateTest, WorkedExampleWithinThreeSigma) {
  const auto g = make_threshold(3, 2);
  const CommonGoodUtilities u({4, 4, 4}, 1);
  const StrategyProfile a({0.5, 0.5, 0.5});
  const auto r = simulate(g, u, a, 100'000, 42);
  EXPECT_NEAR(expected_utility(g, u, a, 3, 0.5), 1.5, 1e-12);
  EXPECT_LE(std::abs(r.means[2] - 1.5), 3 * r.stderrs[2]);
  EXPECT_EQ(r.samples, 100'000U);
  EXPECT_EQ(r.seed, 42U);
}

TEST(SimulateTest, DegenerateProfiles) {
  const auto g = make_threshold(3, 2);
  const CommonGoodUtilities u({4, 4, 4}, 1);
  const auto none = simulate(g, u, StrategyProfile({0, 0, 0}), 1000, 1);
  const auto all = simulate(g, u, StrategyProfile({1, 1, 1}), 1000, 1);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(none.means[static_cast<std::size_t>(i)], 0.0);
    EXPECT_EQ(none.stderrs[static_cast<std::size_t>(i)], 0.0);
    EXPECT_EQ(all.means[static_cast<std::size_t>(i)], 3.0);
    EXPECT_EQ(all.stderrs[static_cast<std::size_t>(i)], 0.0);
  }
}

TEST(SimulateTest, DeterministicAndShardStable) {
  const auto g = AccessStructure::general(4, {{1, 2}, {3}});
  const CommonGoodUtilities u({1, 2, 3, 4}, 0.5);
  const StrategyProfile a({0.2, 0.4, 0.6, 0.8});
  const auto x = simulate(g, u, a, 10'000, 9, 3);
  const auto y = simulate(g, u, a, 10'000, 9, 3);
  EXPECT_EQ(x.means, y.means);
  EXPECT_EQ(x.stderrs, y.stderrs);
  const auto single = simulate(g, u, a, 10'000, 9, 1);
  EXPECT_NE(single.means, x.means);
}

TEST(SimulateTest, StandardErrorMatchesDefinition) {
  // One participant, alpha = 1/2, N = 3, c = 1: utilities are 2 or 0.
  const auto g = AccessStructure::general(1, {{1}});
  const CommonGoodUtilities u({3}, 1);
  const auto r = simulate(g, u, StrategyProfile({0.5}), 4000, 5);
  const double p = r.means[0] / 2.0;
  const double sample_var = 4.0 * p * (1 - p) * 4000.0 / 3999.0;
  EXPECT_NEAR(r.stderrs[0], std::sqrt(sample_var / 4000.0), 1e-12);
}

TEST(SimulateTest, Errors) {
  const auto g = make_threshold(2, 1);
  const CommonGoodUtilities u({1, 1}, 0.5);
  EXPECT_THROW(simulate(g, u, StrategyProfile({0.5, 0.5}), 0, 1), Error);
  EXPECT_THROW(simulate(g, u, StrategyProfile({0.5}), 10, 1), Error);
}

TEST(SimulateTest, RandomInstancesAgreeWithExact) {
  std::mt19937_64 rng(31337);
  for (int t = 0; t < 10; ++t) {
    const auto g = suites::random_structure(rng, 1, 5);
    std::vector<double> values;
    for (int i = 0; i < g.n(); ++i) values.push_back(1.0 + static_cast<double>(rng() % 5));
    const CommonGoodUtilities u(values, 0.7);
    const StrategyProfile a(suites::random_probabilities(rng, g.n()));
    const auto sim = simulate(g, u, a, 50'000, rng());
    const auto exact = exact_utilities(g, u, a);
    for (std::size_t i = 0; i < exact.size(); ++i)
      EXPECT_LE(std::abs(sim.means[i] - exact[i]), 4 * sim.stderrs[i] + 1e-12);
  }
}

}  // namespace
}  // namespace ratshare
