#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ratshare/access_structure.hpp"
#include "ratshare/error.hpp"

namespace ratshare {

/// Common-good taxonomy labels attached to each utility model.
enum class GoodKind { RivalrousExcludable, NonRivalrousNonExcludable };

constexpr std::string_view to_string(GoodKind kind) {
  return kind == GoodKind::RivalrousExcludable ? "rivalrous_excludable"
                                               : "non_rivalrous_non_excludable";
}

inline void check_probability(double a, const char* what) {
  if (!(a >= 0.0 && a <= 1.0))
    throw Error(ErrorCode::BadProbability, std::string(what) + " = " + std::to_string(a) + " not in [0,1]");
}

/// alpha[i-1] is the probability that participant i discloses her share.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    for (double a : alpha_) check_probability(a, "alpha");
  }
  static StrategyProfile pure(Coalition revealers, int n) {
    std::vector<double> a(static_cast<std::size_t>(n), 0.0);
    for (int i = 1; i <= n; ++i)
      if (revealers.contains(i)) a[static_cast<std::size_t>(i - 1)] = 1.0;
    return StrategyProfile(std::move(a));
  }

  int n() const noexcept { return static_cast<int>(alpha_.size()); }
  double operator[](int participant) const { return alpha_.at(static_cast<std::size_t>(participant - 1)); }
  std::span<const double> values() const noexcept { return alpha_; }

  bool is_pure() const noexcept {
    for (double a : alpha_)
      if (a != 0.0 && a != 1.0) return false;
    return true;
  }

  /// Probabilities of everyone except participant i, in ascending id order.
  std::vector<double> others(int i) const {
    std::vector<double> out;
    out.reserve(alpha_.size());
    for (int j = 1; j <= n(); ++j)
      if (j != i) out.push_back(alpha_[static_cast<std::size_t>(j - 1)]);
    return out;
  }

 private:
  std::vector<double> alpha_;
};

// ---------------------------------------------------------------------------
// Common-good model

struct InfoVectorV {
  bool recovered;
  Coalition participated;
};

class CommonGoodUtilities {
 public:
  static constexpr GoodKind kind = GoodKind::NonRivalrousNonExcludable;

  CommonGoodUtilities(std::vector<double> values, double cost) : values_(std::move(values)), cost_(cost) {
    if (!(cost_ > 0.0) || !std::isfinite(cost_))
      throw Error(ErrorCode::BadUtilities, "participation cost must be finite and > 0");
    for (double v : values_)
      if (!std::isfinite(v)) throw Error(ErrorCode::BadUtilities, "common-good value must be finite");
  }

  int n() const noexcept { return static_cast<int>(values_.size()); }
  double value(int i) const { return values_.at(static_cast<std::size_t>(i - 1)); }
  std::span<const double> values() const noexcept { return values_; }
  double cost() const noexcept { return cost_; }

  /// Human-readable warnings for N_i <= 0 and N_i == c.
  std::vector<std::string> degenerate_flags() const {
    std::vector<std::string> flags;
    for (int i = 1; i <= n(); ++i) {
      const double v = value(i);
      if (v <= 0.0) flags.push_back("participant " + std::to_string(i) + ": N_i <= 0");
      if (v == cost_) flags.push_back("participant " + std::to_string(i) + ": N_i == c (tie)");
    }
    return flags;
  }

 private:
  std::vector<double> values_;
  double cost_;
};

inline InfoVectorV outcome_v(const AccessStructure& gamma, Coalition participants) {
  return InfoVectorV{gamma.is_authorized(participants), participants};
}

inline double utility_v(const InfoVectorV& info, const CommonGoodUtilities& u, int i) {
  const double paid = info.participated.contains(i) ? u.cost() : 0.0;
  return (info.recovered ? u.value(i) : 0.0) - paid;
}

// ---------------------------------------------------------------------------
// Greedy (rivalrous, excludable) model: u_i = A t_i - B * sum_{j != i} t_j.

struct InfoVectorHT {
  Coalition learned;
};

class GreedyUtilities {
 public:
  static constexpr GoodKind kind = GoodKind::RivalrousExcludable;

  GreedyUtilities(double reward, double penalty, int n) : reward_(reward), penalty_(penalty), n_(n) {
    if (!(reward_ > 0.0) || !(penalty_ > 0.0) || !std::isfinite(reward_) || !std::isfinite(penalty_))
      throw Error(ErrorCode::BadUtilities, "greedy utilities need A > 0 and B > 0");
    if (n < 1 || n > kMaxParticipants)
      throw Error(ErrorCode::TooManyParticipants, "n=" + std::to_string(n));
  }
  static GreedyUtilities defaults(int n) { return GreedyUtilities(static_cast<double>(n), 1.0, n); }

  double reward() const noexcept { return reward_; }
  double penalty() const noexcept { return penalty_; }
  int n() const noexcept { return n_; }

  /// The parametric family satisfies the ordinal axioms iff A > B(n-1).
  bool satisfies_axioms_by_formula() const noexcept { return reward_ > penalty_ * (n_ - 1); }

 private:
  double reward_;
  double penalty_;
  int n_;
};

/// Broadcast learning rule for a k-out-of-n scheme: with at least k
/// revealers everyone learns; with exactly k-1 only the abstainers learn
/// (own share plus the k-1 public ones); with fewer nobody learns.
inline InfoVectorHT learners(Coalition revealers, int k, int n) {
  const Coalition everyone = Coalition::all(n);
  if (!revealers.subset_of(everyone))
    throw Error(ErrorCode::OutOfRangeParticipant, "revealer beyond n=" + std::to_string(n));
  const int r = revealers.size();
  if (r >= k) return {everyone};
  if (r == k - 1) return {Coalition(everyone.mask() & ~revealers.mask())};
  return {Coalition()};
}

inline double utility_greedy(const InfoVectorHT& info, const GreedyUtilities& u, int i) {
  const int self = info.learned.contains(i) ? 1 : 0;
  const int others = info.learned.size() - self;
  return u.reward() * self - u.penalty() * others;
}

inline constexpr int kMaxAxiomAuditN = 12;

/// Exhaustive check of the ordinal axioms over every pair of learned
/// vectors: correctness (learning beats not learning), exclusivity (fewer
/// other learners is strictly better at equal own status) and the
/// nobody-learns normalization. Invariance under equal information holds
/// because utilities are a function of the learned vector alone.
inline bool greedy_axiom_audit(const GreedyUtilities& u) {
  const int n = u.n();
  if (n > kMaxAxiomAuditN) throw Error(ErrorCode::AuditTooLarge, "axiom audit caps n at 12");
  const std::uint32_t count = 1U << n;
  for (int i = 1; i <= n; ++i)
    if (utility_greedy({Coalition()}, u, i) != 0.0) return false;
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      const Coalition ra(a), rb(b);
      for (int i = 1; i <= n; ++i) {
        const double ua = utility_greedy({ra}, u, i);
        const double ub = utility_greedy({rb}, u, i);
        if (ra.contains(i) && !rb.contains(i) && !(ua > ub)) return false;
        if (ra.contains(i) == rb.contains(i)) {
          const Coalition oa = ra.without(i), ob = rb.without(i);
          if (oa != ob && oa.subset_of(ob) && !(ua > ub)) return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pivot probabilities and exact expected utility

/// Distribution of the others' revealer set S relative to participant i:
/// pivotal = Pr[S unauthorized, S + i authorized] (f),
/// authorized = Pr[S authorized] (g), neither = the rest.
struct PivotSplit {
  double pivotal = 0.0;
  double authorized = 0.0;
  double neither = 0.0;
};

inline PivotSplit pivot_split(const AccessStructure& gamma, int i, std::span<const double> alpha_others) {
  gamma.check_participant(i);
  const int n = gamma.n();
  if (static_cast<int>(alpha_others.size()) != n - 1)
    throw Error(ErrorCode::BadProbability, "expected " + std::to_string(n - 1) + " probabilities for the others");
  for (double a : alpha_others) check_probability(a, "alpha");

  std::vector<int> ids;
  for (int j = 1; j <= n; ++j)
    if (j != i) ids.push_back(j);

  PivotSplit split;
  const std::uint32_t count = 1U << (n - 1);
  for (std::uint32_t m = 0; m < count; ++m) {
    double prob = 1.0;
    Coalition s;
    for (int b = 0; b < n - 1; ++b) {
      const double a = alpha_others[static_cast<std::size_t>(b)];
      if (m & (1U << b)) {
        prob *= a;
        s = s.with(ids[static_cast<std::size_t>(b)]);
      } else {
        prob *= 1.0 - a;
      }
    }
    if (prob == 0.0) continue;
    if (gamma.authorized_unchecked(s))
      split.authorized += prob;
    else if (gamma.authorized_unchecked(s.with(i)))
      split.pivotal += prob;
    else
      split.neither += prob;
  }
  return split;
}

inline double f_gamma(const AccessStructure& gamma, int i, std::span<const double> alpha_others) {
  return pivot_split(gamma, i, alpha_others).pivotal;
}

inline double g_gamma(const AccessStructure& gamma, int i, std::span<const double> alpha_others) {
  return pivot_split(gamma, i, alpha_others).authorized;
}

inline void check_sizes(const AccessStructure& gamma, const CommonGoodUtilities& u, const StrategyProfile& alpha) {
  if (u.n() != gamma.n() || alpha.n() != gamma.n())
    throw Error(ErrorCode::BadConfig, "utility/profile length does not match n=" + std::to_string(gamma.n()));
}

/// E_i(x) = -c x + (x f + g) N_i, with f and g taken over the others' alpha.
inline double expected_utility(const AccessStructure& gamma, const CommonGoodUtilities& u,
                               const StrategyProfile& alpha, int i, double x) {
  check_sizes(gamma, u, alpha);
  check_probability(x, "own disclosure probability");
  const auto others = alpha.others(i);
  const PivotSplit split = pivot_split(gamma, i, others);
  return -u.cost() * x + (x * split.pivotal + split.authorized) * u.value(i);
}

}  // namespace ratshare
