#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ratshare/access_structure.hpp"
#include "ratshare/error.hpp"
#include "ratshare/parallel.hpp"
#include "ratshare/recon_game.hpp"

namespace ratshare {

struct SimResult {
  std::vector<double> means;
  /// Sample standard deviation / sqrt(samples).
  std::vector<double> stderrs;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Running mean and sum of squared deviations (Welford / Chan et al.).
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }
};

inline std::vector<Moments> simulate_shard(const AccessStructure& gamma, const CommonGoodUtilities& u,
                                           const StrategyProfile& alpha, std::uint64_t samples,
                                           std::uint64_t seed) {
  const int n = gamma.n();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Moments> acc(static_cast<std::size_t>(n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    Coalition revealers;
    for (int i = 1; i <= n; ++i)
      if (unit(rng) < alpha[i]) revealers = revealers.with(i);
    const InfoVectorV info = outcome_v(gamma, revealers);
    for (int i = 1; i <= n; ++i) acc[static_cast<std::size_t>(i - 1)].add(utility_v(info, u, i));
  }
  return acc;
}

}  // namespace detail

/// Samples every s_i ~ Bernoulli(alpha_i) independently and averages the
/// common-good utilities. Shard j uses seed + j and draws its share of the
/// samples; shards merge in index order, so the result depends only on
/// (seed, samples, shards).
inline SimResult simulate(const AccessStructure& gamma, const CommonGoodUtilities& u, const StrategyProfile& alpha,
                          std::uint64_t samples, std::uint64_t seed, unsigned shards = 1) {
  check_sizes(gamma, u, alpha);
  if (samples < 1) throw Error(ErrorCode::BadConfig, "need at least one sample");
  if (shards < 1) throw Error(ErrorCode::BadConfig, "need at least one shard");
  const auto parts = parallel_map(shards, [&](std::size_t j) {
    const std::uint64_t share = samples / shards + (j < samples % shards ? 1 : 0);
    return detail::simulate_shard(gamma, u, alpha, share, seed + j);
  });

  const int n = gamma.n();
  std::vector<detail::Moments> total(static_cast<std::size_t>(n));
  for (const auto& part : parts)
    for (std::size_t i = 0; i < total.size(); ++i) total[i].merge(part[i]);

  SimResult result{{}, {}, samples, seed};
  for (const auto& m : total) {
    result.means.push_back(m.mean);
    const double var = m.count > 1 ? m.m2 / static_cast<double>(m.count - 1) : 0.0;
    result.stderrs.push_back(std::sqrt(var) / std::sqrt(static_cast<double>(m.count)));
  }
  return result;
}

/// Exact E_i(alpha_i) for every participant.
inline std::vector<double> exact_utilities(const AccessStructure& gamma, const CommonGoodUtilities& u,
                                           const StrategyProfile& alpha) {
  std::vector<double> out;
  for (int i = 1; i <= gamma.n(); ++i) out.push_back(expected_utility(gamma, u, alpha, i, alpha[i]));
  return out;
}

}  // namespace ratshare
