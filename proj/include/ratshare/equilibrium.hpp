#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

#include "ratshare/access_structure.hpp"
#include "ratshare/error.hpp"
#include "ratshare/recon_game.hpp"

namespace ratshare {

inline constexpr double kStrictTol = 1e-9;

enum class Action : std::uint8_t { Abstain = 0, Reveal = 1 };

constexpr std::string_view to_string(Action a) { return a == Action::Reveal ? "reveal" : "abstain"; }

/// A simultaneous binary-action game: each player reveals or abstains and
/// the pure profile is the coalition of revealers.
template <typename G>
concept BinaryGame = requires(const G& g, Coalition revealers, int i) {
  { g.n() } -> std::convertible_to<int>;
  { g.payoff(revealers, i) } -> std::convertible_to<double>;
  { G::kMaxN } -> std::convertible_to<int>;
};

/// One-shot common-good reconstruction game under V1/V2 utilities.
class CommonGoodGame {
 public:
  static constexpr int kMaxN = 20;

  CommonGoodGame(AccessStructure gamma, CommonGoodUtilities u) : gamma_(std::move(gamma)), u_(std::move(u)) {
    if (u_.n() != gamma_.n())
      throw Error(ErrorCode::BadConfig, "N has " + std::to_string(u_.n()) + " entries, n=" + std::to_string(gamma_.n()));
    const std::uint32_t count = 1U << gamma_.n();
    authorized_.resize(count);
    for (std::uint32_t m = 0; m < count; ++m) authorized_[m] = gamma_.authorized_unchecked(Coalition(m)) ? 1 : 0;
  }

  int n() const noexcept { return gamma_.n(); }
  const AccessStructure& access() const noexcept { return gamma_; }
  const CommonGoodUtilities& utilities() const noexcept { return u_; }

  double payoff(Coalition revealers, int i) const {
    const bool recovered = authorized_[revealers.mask()] != 0;
    return (recovered ? u_.value(i) : 0.0) - (revealers.contains(i) ? u_.cost() : 0.0);
  }

 private:
  AccessStructure gamma_;
  CommonGoodUtilities u_;
  std::vector<std::uint8_t> authorized_;
};

/// Synchronous k-out-of-n broadcast game under greedy utilities.
class BroadcastGame {
 public:
  static constexpr int kMaxN = 12;

  BroadcastGame(int n, int k, GreedyUtilities u) : n_(n), k_(k), u_(u) {
    if (n < 1 || n > kMaxN) throw Error(ErrorCode::TooLarge, "broadcast game caps n at 12");
    if (k < 1 || k > n) throw Error(ErrorCode::BadThreshold, "k=" + std::to_string(k));
    if (u.n() != n) throw Error(ErrorCode::BadConfig, "greedy utilities built for a different n");
  }

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  const GreedyUtilities& utilities() const noexcept { return u_; }

  double payoff(Coalition revealers, int i) const {
    return utility_greedy(learners(revealers, k_, n_), u_, i);
  }

 private:
  int n_;
  int k_;
  GreedyUtilities u_;
};

namespace detail {

template <BinaryGame G>
void check_game_size(const G& game) {
  if (game.n() > G::kMaxN)
    throw Error(ErrorCode::TooLarge, "enumeration caps n at " + std::to_string(G::kMaxN));
}

inline Coalition flip(Coalition s, int i) { return s.contains(i) ? s.without(i) : s.with(i); }

}  // namespace detail

struct NashProfile {
  Coalition revealers;
  /// Some player has a unilateral deviation with equal payoff.
  bool payoff_equivalent_deviation = false;

  friend bool operator==(const NashProfile&, const NashProfile&) = default;
};

/// Every pure profile in which no player gains more than kStrictTol by
/// flipping her action, in ascending mask order.
template <BinaryGame G>
std::vector<NashProfile> enumerate_pure_ne_detailed(const G& game) {
  detail::check_game_size(game);
  const int n = game.n();
  std::vector<NashProfile> out;
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    const Coalition s(m);
    bool stable = true;
    bool equivalent = false;
    for (int i = 1; i <= n && stable; ++i) {
      const double gain = game.payoff(detail::flip(s, i), i) - game.payoff(s, i);
      if (gain > kStrictTol) stable = false;
      else if (gain >= -kStrictTol) equivalent = true;
    }
    if (stable) out.push_back({s, equivalent});
  }
  return out;
}

template <BinaryGame G>
std::vector<Coalition> enumerate_pure_ne(const G& game) {
  std::vector<Coalition> out;
  for (const auto& ne : enumerate_pure_ne_detailed(game)) out.push_back(ne.revealers);
  return out;
}

struct Deletion {
  int player;
  Action removed;
  Action dominated_by;
  int round = 1;
};

struct DominanceResult {
  int n = 0;
  /// Per player bit 0 = Abstain survives, bit 1 = Reveal survives.
  std::vector<std::uint8_t> surviving;
  std::vector<Deletion> deletions;

  bool allows(int i, Action a) const {
    return (surviving[static_cast<std::size_t>(i - 1)] >> static_cast<int>(a)) & 1U;
  }

  bool survives(Coalition profile) const {
    for (int i = 1; i <= n; ++i)
      if (!allows(i, profile.contains(i) ? Action::Reveal : Action::Abstain)) return false;
    return true;
  }

  std::vector<Coalition> surviving_profiles() const {
    std::vector<Coalition> out;
    for (std::uint32_t m = 0; m < (1U << n); ++m)
      if (survives(Coalition(m))) out.emplace_back(m);
    return out;
  }
};

namespace detail {

/// True when `worse` is weakly dominated by `better` for player i against
/// every opponent profile drawn from the surviving sets.
template <BinaryGame G>
bool weakly_dominated(const G& game, const DominanceResult& state, int i, Action worse, Action better) {
  const int n = game.n();
  std::vector<int> free_players;
  Coalition fixed;
  for (int j = 1; j <= n; ++j) {
    if (j == i) continue;
    const bool abstain = state.allows(j, Action::Abstain);
    const bool reveal = state.allows(j, Action::Reveal);
    if (abstain && reveal) free_players.push_back(j);
    else if (reveal) fixed = fixed.with(j);
  }
  bool strictly_somewhere = false;
  const std::uint32_t combos = 1U << free_players.size();
  for (std::uint32_t m = 0; m < combos; ++m) {
    Coalition others = fixed;
    for (std::size_t b = 0; b < free_players.size(); ++b)
      if (m & (1U << b)) others = others.with(free_players[b]);
    const auto with_action = [&](Action a) { return a == Action::Reveal ? others.with(i) : others; };
    const double diff = game.payoff(with_action(better), i) - game.payoff(with_action(worse), i);
    if (diff < -kStrictTol) return false;
    if (diff > kStrictTol) strictly_somewhere = true;
  }
  return strictly_somewhere;
}

}  // namespace detail

/// Iterated deletion of weakly dominated actions in rounds. Within a round
/// every player (ascending) is tested against the strategy sets as they
/// stood at the start of the round and loses at most one action; rounds
/// repeat until one removes nothing.
template <BinaryGame G>
DominanceResult iterated_weak_dominance(const G& game) {
  detail::check_game_size(game);
  const int n = game.n();
  DominanceResult state{n, std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0b11), {}};
  for (int round = 1;; ++round) {
    const DominanceResult start = state;
    bool changed = false;
    for (int i = 1; i <= n; ++i) {
      if (start.surviving[static_cast<std::size_t>(i - 1)] != 0b11) continue;
      for (Action worse : {Action::Reveal, Action::Abstain}) {
        const Action better = worse == Action::Reveal ? Action::Abstain : Action::Reveal;
        if (detail::weakly_dominated(game, start, i, worse, better)) {
          state.surviving[static_cast<std::size_t>(i - 1)] &= static_cast<std::uint8_t>(~(1U << static_cast<int>(worse)));
          state.deletions.push_back({i, worse, better, round});
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }
  return state;
}

// ---------------------------------------------------------------------------
// Common-good best responses and the characterization of pure equilibria

enum class ResponseKind { Reveal, Abstain, Inessential };

constexpr std::string_view to_string(ResponseKind k) {
  switch (k) {
    case ResponseKind::Reveal: return "reveal";
    case ResponseKind::Abstain: return "abstain";
    case ResponseKind::Inessential: return "inessential";
  }
  return "?";
}

struct BestResponse {
  ResponseKind kind;
  /// f_gamma * N_i - c, i.e. E_i(1) - E_i(0).
  double margin;
};

inline BestResponse best_response(const AccessStructure& gamma, const CommonGoodUtilities& u,
                                  const StrategyProfile& alpha, int i) {
  check_sizes(gamma, u, alpha);
  const double margin = f_gamma(gamma, i, alpha.others(i)) * u.value(i) - u.cost();
  if (margin > kStrictTol) return {ResponseKind::Reveal, margin};
  if (margin < -kStrictTol) return {ResponseKind::Abstain, margin};
  return {ResponseKind::Inessential, margin};
}

struct ProfileCheck {
  std::vector<BestResponse> responses;
  /// Players whose expected utility does not depend on their own action.
  std::vector<int> inessential;
  bool is_equilibrium = false;
};

/// Report-only check of a (possibly mixed) profile: interior players must
/// be inessential, pure players must be playing a best response.
inline ProfileCheck check_profile(const AccessStructure& gamma, const CommonGoodUtilities& u,
                                  const StrategyProfile& alpha) {
  check_sizes(gamma, u, alpha);
  ProfileCheck out;
  out.is_equilibrium = true;
  for (int i = 1; i <= gamma.n(); ++i) {
    const BestResponse br = best_response(gamma, u, alpha, i);
    out.responses.push_back(br);
    if (br.kind == ResponseKind::Inessential) {
      out.inessential.push_back(i);
      continue;
    }
    const double a = alpha[i];
    const bool ok = (br.kind == ResponseKind::Reveal && a == 1.0) || (br.kind == ResponseKind::Abstain && a == 0.0);
    if (!ok) out.is_equilibrium = false;
  }
  return out;
}

inline void check_no_tie(const CommonGoodUtilities& u) {
  for (int i = 1; i <= u.n(); ++i)
    if (u.value(i) == u.cost())
      throw Error(ErrorCode::DegenerateTie,
                  "participant " + std::to_string(i) + " has N_i == c = " + std::to_string(u.cost()));
}

/// v_X for every minimal authorized X whose members all have N_i > c,
/// plus the zero vector unless some self-sufficient participant has
/// N_i > c. Ascending mask order.
inline std::vector<Coalition> predicted_equilibria(const AccessStructure& gamma, const CommonGoodUtilities& u) {
  if (u.n() != gamma.n()) throw Error(ErrorCode::BadConfig, "N length does not match n");
  check_no_tie(u);
  std::vector<Coalition> out;
  bool zero_is_ne = true;
  for (Coalition x : gamma.min_coalitions()) {
    const auto ids = x.members();
    const bool eager = std::all_of(ids.begin(), ids.end(), [&](int i) { return u.value(i) > u.cost(); });
    if (!eager) continue;
    out.push_back(x);
    if (x.size() == 1) zero_is_ne = false;
  }
  if (zero_is_ne) out.emplace_back();
  std::sort(out.begin(), out.end());
  return out;
}

struct EquilibriumReport {
  int n = 0;
  std::vector<Coalition> brute_force_ne;
  std::vector<Coalition> predicted_ne;
  std::vector<Coalition> payoff_equivalent_ne;
  std::vector<std::pair<Coalition, bool>> survives_dominance;
  std::vector<Coalition> dominance_survivors;
  std::vector<Deletion> deletions;
  std::vector<std::string> flags;
  bool match = false;
};

inline EquilibriumReport verify_theorem3(const AccessStructure& gamma, const CommonGoodUtilities& u) {
  const CommonGoodGame game(gamma, u);
  EquilibriumReport report;
  report.n = gamma.n();
  report.flags = u.degenerate_flags();
  report.predicted_ne = predicted_equilibria(gamma, u);
  for (const auto& ne : enumerate_pure_ne_detailed(game)) {
    report.brute_force_ne.push_back(ne.revealers);
    if (ne.payoff_equivalent_deviation) report.payoff_equivalent_ne.push_back(ne.revealers);
  }
  const DominanceResult dom = iterated_weak_dominance(game);
  report.deletions = dom.deletions;
  report.dominance_survivors = dom.surviving_profiles();
  bool all_survive = true;
  for (Coalition ne : report.predicted_ne) {
    const bool ok = dom.survives(ne);
    report.survives_dominance.emplace_back(ne, ok);
    all_survive = all_survive && ok;
  }
  report.match = report.brute_force_ne == report.predicted_ne && all_survive;
  return report;
}

/// Equilibrium analysis of the broadcast game; there is no closed-form
/// prediction, so predicted_ne holds the dominance survivors.
inline EquilibriumReport analyze_broadcast(const BroadcastGame& game) {
  EquilibriumReport report;
  report.n = game.n();
  for (const auto& ne : enumerate_pure_ne_detailed(game)) {
    report.brute_force_ne.push_back(ne.revealers);
    if (ne.payoff_equivalent_deviation) report.payoff_equivalent_ne.push_back(ne.revealers);
  }
  const DominanceResult dom = iterated_weak_dominance(game);
  report.deletions = dom.deletions;
  report.dominance_survivors = dom.surviving_profiles();
  report.predicted_ne = report.dominance_survivors;
  for (Coalition ne : report.brute_force_ne) report.survives_dominance.emplace_back(ne, dom.survives(ne));
  report.match = std::all_of(report.dominance_survivors.begin(), report.dominance_survivors.end(),
                             [&](Coalition s) {
                               return std::find(report.brute_force_ne.begin(), report.brute_force_ne.end(), s) !=
                                      report.brute_force_ne.end();
                             });
  return report;
}

struct HtReport {
  int n = 0;
  int k = 0;
  std::vector<bool> abstain_dominates;
  std::vector<Coalition> survivors;
  bool nobody_learns = false;
  bool pass = false;
};

/// In the k-out-of-n broadcast game: abstaining weakly dominates
/// revealing for everyone, iterated deletion leaves only the all-abstain
/// profile, and nobody learns the secret there.
inline HtReport verify_ht_theorem(int n, int k, const GreedyUtilities& u) {
  if (k < 2 || k > n || n > BroadcastGame::kMaxN)
    throw Error(ErrorCode::BadThreshold, "need 2 <= k <= n <= 12");
  if (!u.satisfies_axioms_by_formula() || !greedy_axiom_audit(u))
    throw Error(ErrorCode::AxiomViolation, "A must exceed B(n-1)");
  const BroadcastGame game(n, k, u);
  HtReport report;
  report.n = n;
  report.k = k;

  DominanceResult full{n, std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0b11), {}};
  bool all_dominate = true;
  for (int i = 1; i <= n; ++i) {
    const bool d = detail::weakly_dominated(game, full, i, Action::Reveal, Action::Abstain);
    report.abstain_dominates.push_back(d);
    all_dominate = all_dominate && d;
  }
  report.survivors = iterated_weak_dominance(game).surviving_profiles();
  const bool unique_abstain = report.survivors.size() == 1 && report.survivors.front().empty();
  report.nobody_learns = unique_abstain && learners(report.survivors.front(), k, n).learned.empty();
  report.pass = all_dominate && unique_abstain && report.nobody_learns;
  return report;
}

}  // namespace ratshare
