#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ratshare/access_structure.hpp"

namespace ratshare {
namespace {

std::vector<Coalition> list(std::initializer_list<Coalition> cs) { return cs; }

TEST(CoalitionTest, BitLayout) {
  const Coalition c{1, 3};
  EXPECT_EQ(c.mask(), 0b101U);
  EXPECT_EQ(c.members(), (std::vector<int>{1, 3}));
  EXPECT_EQ(c.characteristic(4), (std::vector<int>{1, 0, 1, 0}));
  EXPECT_TRUE(Coalition{1}.subset_of(c));
  EXPECT_FALSE(c.subset_of(Coalition{1}));
}

TEST(ThresholdTest, Examples) {
  EXPECT_EQ(make_threshold(3, 2).min_coalitions(), list({{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(make_threshold(1, 1).min_coalitions(), list({{1}}));
  EXPECT_EQ(make_threshold(4, 4).min_coalitions(), list({{1, 2, 3, 4}}));
}

TEST(ThresholdTest, BadThreshold) {
  for (auto [n, k] : {std::pair{3, 0}, std::pair{3, 4}}) {
    try {
      make_threshold(n, k);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadThreshold);
    }
  }
}

TEST(ThresholdTest, AuthorizesExactlyLargeSubsets) {
  for (int n = 1; n <= 10; ++n)
    for (int k = 1; k <= n; ++k) {
      const auto g = make_threshold(n, k);
      EXPECT_EQ(g.threshold_k(), k);
      for (std::uint32_t m = 0; m < (1U << n); ++m) ASSERT_EQ(g.is_authorized(Coalition(m)), std::popcount(m) >= k);
    }
}

TEST(GeneralTest, Examples) {
  EXPECT_EQ(AccessStructure::general(3, {{1, 2}, {1, 2, 3}}).min_coalitions(), list({{1, 2}}));
  EXPECT_EQ(AccessStructure::general(3, {{1}, {2, 3}}).min_coalitions(), list({{1}, {2, 3}}));
  EXPECT_EQ(AccessStructure::general(4, {{1, 2}, {2, 3}, {1, 2, 3}}).min_coalitions(), list({{1, 2}, {2, 3}}));
}

TEST(GeneralTest, ErrorPaths) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::BadConfig;
  };
  EXPECT_EQ(code_of([] { AccessStructure::general(3, std::vector<Coalition>{}); }), ErrorCode::EmptyList);
  EXPECT_EQ(code_of([] { AccessStructure::general(3, {Coalition()}); }), ErrorCode::EmptyCoalition);
  EXPECT_EQ(code_of([] { AccessStructure::general(3, {{1, 4}}); }), ErrorCode::OutOfRangeParticipant);
  EXPECT_EQ(code_of([] { make_threshold(3, 2).is_authorized(Coalition{4}); }), ErrorCode::OutOfRangeParticipant);
  EXPECT_EQ(code_of([] { make_threshold(3, 2).is_self_sufficient(0); }), ErrorCode::OutOfRangeParticipant);
}

TEST(GeneralTest, DetectsThresholdShape) {
  EXPECT_EQ(AccessStructure::general(3, {{1, 2}, {1, 3}, {2, 3}}).threshold_k(), 2);
  EXPECT_EQ(AccessStructure::general(3, {{1}, {2, 3}}).threshold_k(), 0);
}

TEST(AuthorizationTest, Examples) {
  EXPECT_TRUE(make_threshold(3, 2).is_authorized(Coalition{1, 3}));
  EXPECT_FALSE(make_threshold(3, 2).is_authorized(Coalition{2}));
  EXPECT_TRUE(AccessStructure::general(3, {{1}, {2, 3}}).is_authorized(Coalition{1}));
  EXPECT_FALSE(make_threshold(3, 2).is_authorized(Coalition()));
}

TEST(SelfSufficiencyTest, Examples) {
  EXPECT_FALSE(make_threshold(3, 2).is_self_sufficient(1));
  EXPECT_TRUE(make_threshold(3, 1).is_self_sufficient(2));
  EXPECT_FALSE(AccessStructure::general(3, {{1}, {2, 3}}).is_self_sufficient(3));
}

// Random general structures: antichain, monotone, idempotent.
TEST(GeneralTest, RandomStructuresAreMonotoneAntichains) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int n = static_cast<int>(rng() % 12) + 1;
    std::vector<Coalition> raw;
    const int count = static_cast<int>(rng() % 6) + 1;
    for (int j = 0; j < count; ++j) raw.emplace_back(static_cast<std::uint32_t>(rng() % ((1U << n) - 1)) + 1U);
    const auto g = AccessStructure::general(n, raw);
    const auto& mins = g.min_coalitions();
    ASSERT_TRUE(std::is_sorted(mins.begin(), mins.end()));
    for (auto a : mins)
      for (auto b : mins) ASSERT_TRUE(a == b || !a.subset_of(b));
    // Every input coalition is authorized; the structure regenerates itself.
    for (auto c : raw) ASSERT_TRUE(g.is_authorized(c));
    ASSERT_EQ(AccessStructure::general(n, mins), g);
    if (n <= 12) {
      for (std::uint32_t s = 0; s < (1U << n); ++s) {
        if (!g.is_authorized(Coalition(s))) continue;
        for (int i = 1; i <= n; ++i) ASSERT_TRUE(g.is_authorized(Coalition(s).with(i)));
      }
    }
  }
}

}  // namespace
}  // namespace ratshare
