#pragma once

// Verification sweeps shared by `ratshare verify` and the acceptance tests.
// Each suite emits one JSON object per instance and an overall verdict;
// every random choice flows from the suite seed.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratshare/access_structure.hpp"
#include "ratshare/async_game.hpp"
#include "ratshare/equilibrium.hpp"
#include "ratshare/montecarlo.hpp"
#include "ratshare/parallel.hpp"
#include "ratshare/recon_game.hpp"
#include "ratshare/shamir.hpp"

namespace ratshare::suites {

using json = nlohmann::json;

struct SuiteResult {
  std::string name;
  std::vector<json> instances;
  bool pass = true;

  void add(json instance, bool ok) {
    instance["pass"] = ok;
    instances.push_back(std::move(instance));
    pass = pass && ok;
  }
};

inline constexpr double kLemmaTol = 1e-12;
inline constexpr std::array<double, 3> kCommonGoodValues{0.5, 2.0, 5.0};

/// Random general structure: n uniform in [min_n, max_n], 1..4 random
/// nonempty coalitions reduced to their minimal elements.
template <typename Rng>
AccessStructure random_general_structure(Rng& rng, int min_n, int max_n) {
  const int n = std::uniform_int_distribution<int>(min_n, max_n)(rng);
  const int count = std::uniform_int_distribution<int>(1, 4)(rng);
  std::uniform_int_distribution<std::uint32_t> mask(1, (1U << n) - 1U);
  std::vector<Coalition> cs;
  for (int j = 0; j < count; ++j) cs.emplace_back(mask(rng));
  return AccessStructure::general(n, cs);
}

/// Threshold or general with equal odds.
template <typename Rng>
AccessStructure random_structure(Rng& rng, int min_n, int max_n) {
  if (std::bernoulli_distribution(0.5)(rng)) {
    const int n = std::uniform_int_distribution<int>(min_n, max_n)(rng);
    return AccessStructure::threshold(n, std::uniform_int_distribution<int>(1, n)(rng));
  }
  return random_general_structure(rng, min_n, max_n);
}

template <typename Rng>
std::vector<double> random_probabilities(Rng& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(unit(rng));
  return out;
}

// ---------------------------------------------------------------------------

/// Round trip over every k-subset and all secrets, plus the exhaustive
/// perfectness audit, for p in {5,7,11} and 1 <= k <= n <= 4.
inline SuiteResult shamir_suite(std::uint64_t seed) {
  SuiteResult out{"shamir", {}, true};
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL}) {
    const PrimeField field(p);
    for (int n = 1; n <= 4; ++n) {
      for (int k = 1; k <= n; ++k) {
        std::uint64_t failures = 0;
        std::uint64_t checks = 0;
        for (std::uint64_t s = 0; s < p; ++s) {
          const Dealing d = deal(FieldElement(field, s), k, n, seed + s * 131 + static_cast<std::uint64_t>(n * 11 + k));
          for (std::uint32_t m = 0; m < (1U << n); ++m) {
            if (std::popcount(m) != k) continue;
            std::vector<Share> subset;
            for (const auto& sh : d.shares)
              if (m & (1U << (sh.participant - 1))) subset.push_back(sh);
            ++checks;
            if (reconstruct(subset, p).value() != s) ++failures;
          }
        }
        const PerfectnessReport audit = perfectness_audit(p, k, n);
        json counts = json::array();
        for (const auto& c : audit.unauthorized)
          counts.push_back(json{{"coalition", c.coalition.members()}, {"count", c.min_count}, {"uniform", c.uniform}});
        out.add(json{{"suite", "shamir"},
                     {"p", p},
                     {"k", k},
                     {"n", n},
                     {"reconstructions", checks},
                     {"reconstruction_failures", failures},
                     {"audit_pass", audit.pass},
                     {"sub_threshold_counts", counts}},
                failures == 0 && audit.pass);
      }
    }
  }
  return out;
}

/// Linearity of E_i in x and the best-response margin identity over 200
/// random instances with n <= 6; then the 2-of-3 worked bracket and the
/// inessential instance N=1, c=1/2, alpha=(1/2,1/2).
inline SuiteResult lemma1_suite(std::uint64_t seed) {
  SuiteResult out{"lemma1", {}, true};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-2.0, 6.0);
  std::uniform_real_distribution<double> cost(0.05, 3.0);
  double worst_collinear = 0.0;
  double worst_margin = 0.0;
  for (int t = 0; t < 200; ++t) {
    const AccessStructure gamma = random_structure(rng, 1, 6);
    const int n = gamma.n();
    std::vector<double> values;
    for (int i = 0; i < n; ++i) values.push_back(value(rng));
    const CommonGoodUtilities u(values, cost(rng));
    const StrategyProfile alpha(random_probabilities(rng, n));
    const int i = std::uniform_int_distribution<int>(1, n)(rng);
    const double e0 = expected_utility(gamma, u, alpha, i, 0.0);
    const double eh = expected_utility(gamma, u, alpha, i, 0.5);
    const double e1 = expected_utility(gamma, u, alpha, i, 1.0);
    const double f = f_gamma(gamma, i, alpha.others(i));
    worst_collinear = std::max(worst_collinear, std::abs(eh - 0.5 * (e0 + e1)));
    worst_margin = std::max(worst_margin, std::abs((e1 - e0) - (f * u.value(i) - u.cost())));
  }
  out.add(json{{"suite", "lemma1"},
               {"check", "linearity"},
               {"instances", 200},
               {"max_collinearity_error", worst_collinear},
               {"max_margin_error", worst_margin}},
          worst_collinear <= kLemmaTol && worst_margin <= kLemmaTol);

  const AccessStructure two_of_three = AccessStructure::threshold(3, 2);
  double worst_f = 0.0;
  double worst_g = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto a = random_probabilities(rng, 2);
    const double f_expected = a[0] * (1 - a[1]) + a[1] * (1 - a[0]);
    const double g_expected = a[0] * a[1];
    worst_f = std::max(worst_f, std::abs(f_gamma(two_of_three, 3, a) - f_expected));
    worst_g = std::max(worst_g, std::abs(g_gamma(two_of_three, 3, a) - g_expected));
  }
  out.add(json{{"suite", "lemma1"}, {"check", "two_of_three_bracket"}, {"instances", 100}, {"max_f_error", worst_f}, {"max_g_error", worst_g}},
          worst_f <= kLemmaTol && worst_g <= kLemmaTol);

  const CommonGoodUtilities flat({1.0, 1.0, 1.0}, 0.5);
  const StrategyProfile half({0.5, 0.5, 0.5});
  double lo = expected_utility(two_of_three, flat, half, 3, 0.0);
  double hi = lo;
  for (double x : {0.5, 1.0}) {
    const double e = expected_utility(two_of_three, flat, half, 3, x);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  const BestResponse br = best_response(two_of_three, flat, half, 3);
  out.add(json{{"suite", "lemma1"}, {"check", "inessential_instance"}, {"value", lo}, {"spread", hi - lo}, {"response", to_string(br.kind)}},
          hi - lo < kLemmaTol && br.kind == ResponseKind::Inessential);
  return out;
}

/// Sweeps every N in {0.5,2,5}^n for one structure; reports the number of
/// N vectors whose brute-force NE set equals the prediction and whose
/// predicted NE all survive iterated weak dominance.
inline json theorem3_instance(const AccessStructure& gamma, bool& ok) {
  const int n = gamma.n();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= kCommonGoodValues.size();
  std::size_t matched = 0;
  json failures = json::array();
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<double> values;
    std::size_t rest = code;
    for (int i = 0; i < n; ++i) {
      values.push_back(kCommonGoodValues[rest % kCommonGoodValues.size()]);
      rest /= kCommonGoodValues.size();
    }
    const EquilibriumReport r = verify_theorem3(gamma, CommonGoodUtilities(values, 1.0));
    if (r.match) {
      ++matched;
    } else if (failures.size() < 5) {
      json bf = json::array(), pr = json::array();
      for (Coalition c : r.brute_force_ne) bf.push_back(c.characteristic(n));
      for (Coalition c : r.predicted_ne) pr.push_back(c.characteristic(n));
      failures.push_back(json{{"N", values}, {"brute_force_ne", bf}, {"predicted_ne", pr}});
    }
  }
  ok = matched == total;
  json mins = json::array();
  for (Coalition c : gamma.min_coalitions()) mins.push_back(c.members());
  return json{{"suite", "theorem3"}, {"n", n}, {"min_coalitions", mins}, {"N_vectors", total}, {"matched", matched}, {"counterexamples", failures}};
}

/// Every threshold structure with n <= max_n plus 100 random general
/// structures with n <= max_n.
inline SuiteResult theorem3_suite(std::uint64_t seed, int max_n) {
  SuiteResult out{"theorem3", {}, true};
  std::vector<AccessStructure> structures;
  for (int n = 1; n <= max_n; ++n)
    for (int k = 1; k <= n; ++k) structures.push_back(AccessStructure::threshold(n, k));
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 100; ++t) structures.push_back(random_general_structure(rng, 1, max_n));

  const auto results = parallel_map(structures.size(), [&](std::size_t idx) {
    bool ok = false;
    json j = theorem3_instance(structures[idx], ok);
    return std::pair<json, bool>(std::move(j), ok);
  });
  for (const auto& [j, ok] : results) out.add(j, ok);
  return out;
}

/// Broadcast game under A=n, B=1 for all 2 <= k <= n <= max_n.
inline SuiteResult ht_suite(int max_n) {
  SuiteResult out{"ht", {}, true};
  for (int n = 2; n <= max_n; ++n) {
    for (int k = 2; k <= n; ++k) {
      const HtReport r = verify_ht_theorem(n, k, GreedyUtilities::defaults(n));
      json survivors = json::array();
      for (Coalition c : r.survivors) survivors.push_back(c.characteristic(n));
      json dominates = json::array();
      for (bool b : r.abstain_dominates) dominates.push_back(b);
      out.add(json{{"suite", "ht"}, {"n", n}, {"k", k}, {"A", n}, {"B", 1}, {"abstain_dominates", dominates},
                   {"survivors", survivors}, {"nobody_learns", r.nobody_learns}},
              r.pass);
    }
  }
  return out;
}

struct AsyncInstance {
  int n;
  int k;
  int depth;
};

inline std::vector<AsyncInstance> async_envelope() {
  std::vector<AsyncInstance> out;
  for (int d = 1; d <= 5; ++d) out.push_back({2, 2, d});
  for (int d = 1; d <= 4; ++d) out.push_back({3, 2, d});
  for (int d = 1; d <= 4; ++d) out.push_back({3, 3, d});
  return out;
}

inline SuiteResult async_suite() {
  SuiteResult out{"async", {}, true};
  for (const auto& inst : async_envelope()) {
    const AsyncGame game(AsyncConfig{inst.n, inst.k, inst.depth, {}}, GreedyUtilities::defaults(inst.n));
    const Theorem2Report r = verify_theorem2(game);
    out.add(json{{"suite", "async"}, {"n", inst.n}, {"k", inst.k}, {"depth", inst.depth}, {"nodes", r.nodes},
                 {"learning_terminals", r.learning_terminals}, {"root_value", r.root_value},
                 {"counterexamples", r.counterexamples}},
            r.pass);
  }
  return out;
}

inline constexpr std::uint64_t kMonteCarloSamples = 100'000;
inline constexpr double kMonteCarloSigmas = 4.0;

/// 50 random (structure, alpha, N, c) instances with n <= max_n; every
/// estimate must sit within 4 standard errors of the exact value.
inline SuiteResult montecarlo_suite(std::uint64_t seed, int max_n) {
  SuiteResult out{"montecarlo", {}, true};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(0.5, 5.0);
  std::uniform_real_distribution<double> cost(0.1, 2.0);
  for (int t = 0; t < 50; ++t) {
    const AccessStructure gamma = random_structure(rng, 1, max_n);
    const int n = gamma.n();
    std::vector<double> values;
    for (int i = 0; i < n; ++i) values.push_back(value(rng));
    const CommonGoodUtilities u(values, cost(rng));
    const StrategyProfile alpha(random_probabilities(rng, n));
    const std::uint64_t sim_seed = rng();
    const SimResult sim = simulate(gamma, u, alpha, kMonteCarloSamples, sim_seed);
    const auto exact = exact_utilities(gamma, u, alpha);
    double worst_z = 0.0;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double err = std::abs(sim.means[idx] - exact[idx]);
      if (err > kMonteCarloSigmas * sim.stderrs[idx] + 1e-12) ok = false;
      if (sim.stderrs[idx] > 0) worst_z = std::max(worst_z, err / sim.stderrs[idx]);
    }
    out.add(json{{"suite", "montecarlo"}, {"instance", t}, {"n", n}, {"seed", sim_seed}, {"means", sim.means},
                 {"stderr", sim.stderrs}, {"exact", exact}, {"max_z", worst_z}},
            ok);
  }
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"shamir", "lemma1", "theorem3", "ht", "async", "montecarlo"};
  return names;
}

inline SuiteResult run_suite(const std::string& name, std::uint64_t seed, int max_n) {
  if (name == "shamir") return shamir_suite(seed);
  if (name == "lemma1") return lemma1_suite(seed);
  if (name == "theorem3") return theorem3_suite(seed, max_n);
  if (name == "ht") return ht_suite(max_n);
  if (name == "async") return async_suite();
  if (name == "montecarlo") return montecarlo_suite(seed, max_n);
  throw Error(ErrorCode::BadConfig, "unknown suite '" + name + "'");
}

}  // namespace ratshare::suites
