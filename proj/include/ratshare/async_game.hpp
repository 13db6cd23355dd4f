#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ratshare/access_structure.hpp"
#include "ratshare/equilibrium.hpp"
#include "ratshare/error.hpp"
#include "ratshare/recon_game.hpp"

namespace ratshare {

inline constexpr int kMaxAsyncN = 3;
inline constexpr int kMaxAsyncDepth = 6;

/// Asynchronous disclosure game for a k-out-of-n scheme. Players move in
/// `order` repeatedly; share j belongs to participant j.
struct AsyncConfig {
  int n = 2;
  int k = 2;
  int depth_bound = 4;
  /// Move order as 1-based ids; empty means round-robin 1..n.
  std::vector<int> order;

  std::vector<int> effective_order() const {
    if (!order.empty()) return order;
    std::vector<int> out(static_cast<std::size_t>(n));
    std::iota(out.begin(), out.end(), 1);
    return out;
  }

  void validate() const {
    if (n < 2 || n > kMaxAsyncN || depth_bound < 0 || depth_bound > kMaxAsyncDepth)
      throw Error(ErrorCode::TooLarge, "async game supports 2 <= n <= 3 and depth <= 6");
    if (k < 2 || k > n) throw Error(ErrorCode::BadThreshold, "async game needs 2 <= k <= n");
    if (!order.empty()) {
      std::vector<int> sorted = order;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> expect(static_cast<std::size_t>(n));
      std::iota(expect.begin(), expect.end(), 1);
      if (sorted != expect) throw Error(ErrorCode::BadConfig, "move order must be a permutation of 1..n");
    }
  }
};

/// known[i-1] is the set of share indices participant i holds.
struct KnowledgeState {
  std::vector<Coalition> known;

  static KnowledgeState initial(int n) {
    KnowledgeState s;
    for (int i = 1; i <= n; ++i) s.known.push_back(Coalition{i});
    return s;
  }
  const Coalition& of(int i) const { return known.at(static_cast<std::size_t>(i - 1)); }

  friend bool operator==(const KnowledgeState&, const KnowledgeState&) = default;
};

enum class NodeStatus { Open, Learned, Truncated };

struct GameNode {
  KnowledgeState knowledge;
  /// Index into the move order of the player to move.
  int turn = 0;
  int depth = 0;
  NodeStatus status = NodeStatus::Open;
  /// Participant whose move produced this node; 0 at the root.
  int last_mover = 0;

  bool terminal() const noexcept { return status != NodeStatus::Open; }
};

struct Move {
  Coalition disclosed;
  Coalition recipients;

  bool is_pass() const noexcept { return disclosed.empty() || recipients.empty(); }
  friend bool operator==(const Move&, const Move&) = default;
};

class AsyncGame {
 public:
  AsyncGame(AsyncConfig config, GreedyUtilities u) : config_(std::move(config)), u_(u) {
    config_.validate();
    if (u_.n() != config_.n) throw Error(ErrorCode::BadConfig, "greedy utilities built for a different n");
    order_ = config_.effective_order();
  }

  const AsyncConfig& config() const noexcept { return config_; }
  const GreedyUtilities& utilities() const noexcept { return u_; }

  GameNode root() const {
    GameNode node{KnowledgeState::initial(config_.n), 0, 0, NodeStatus::Open, 0};
    node.status = status_of(node);
    return node;
  }

  int mover(const GameNode& node) const { return order_[static_cast<std::size_t>(node.turn)]; }

  /// Participants holding at least k distinct shares.
  Coalition learned(const KnowledgeState& s) const {
    Coalition out;
    for (int i = 1; i <= config_.n; ++i)
      if (s.of(i).size() >= config_.k) out = out.with(i);
    return out;
  }

  /// Pass first, then every (nonempty disclosed, nonempty recipients) pair
  /// in ascending mask order.
  std::vector<Move> moves(const GameNode& node) const {
    std::vector<Move> out{Move{}};
    if (node.terminal()) return {};
    const int who = mover(node);
    const std::uint32_t own = node.knowledge.of(who).mask();
    const std::uint32_t others = Coalition::all(config_.n).without(who).mask();
    for (std::uint32_t d = own; d != 0; d = (d - 1) & own) {
      for (std::uint32_t r = others; r != 0; r = (r - 1) & others) out.push_back(Move{Coalition(d), Coalition(r)});
    }
    std::sort(out.begin() + 1, out.end(), [](const Move& a, const Move& b) {
      return a.disclosed != b.disclosed ? a.disclosed < b.disclosed : a.recipients < b.recipients;
    });
    return out;
  }

  GameNode apply_move(const GameNode& node, const Move& m) const {
    if (node.terminal()) throw Error(ErrorCode::InvalidMove, "node is terminal");
    const int who = mover(node);
    if (!m.disclosed.subset_of(node.knowledge.of(who)))
      throw Error(ErrorCode::InvalidMove, "participant " + std::to_string(who) + " discloses shares she does not hold");
    if (m.recipients.contains(who)) throw Error(ErrorCode::InvalidMove, "mover cannot be a recipient");
    if (!m.recipients.subset_of(Coalition::all(config_.n)))
      throw Error(ErrorCode::InvalidMove, "recipient beyond n");

    GameNode next = node;
    if (!m.is_pass()) {
      for (int r : m.recipients.members()) {
        auto& k = next.knowledge.known[static_cast<std::size_t>(r - 1)];
        k = Coalition(k.mask() | m.disclosed.mask());
      }
    }
    next.turn = (node.turn + 1) % static_cast<int>(order_.size());
    next.depth = node.depth + 1;
    next.last_mover = who;
    next.status = status_of(next);
    return next;
  }

  /// Greedy payoffs at a terminal node; truncation counts as nobody learning.
  std::vector<double> payoffs(const GameNode& node) const {
    const Coalition who = node.status == NodeStatus::Learned ? learned(node.knowledge) : Coalition();
    std::vector<double> out;
    for (int i = 1; i <= config_.n; ++i) out.push_back(utility_greedy({who}, u_, i));
    return out;
  }

  /// Memo key: knowledge masks, turn and depth packed into 64 bits.
  std::uint64_t key(const GameNode& node) const {
    std::uint64_t k = 0;
    for (const auto& c : node.knowledge.known) k = (k << 4U) | c.mask();
    k = (k << 4U) | static_cast<std::uint64_t>(node.turn);
    k = (k << 4U) | static_cast<std::uint64_t>(node.depth);
    return k;
  }

 private:
  NodeStatus status_of(const GameNode& node) const {
    if (!learned(node.knowledge).empty()) return NodeStatus::Learned;
    if (node.depth >= config_.depth_bound) return NodeStatus::Truncated;
    return NodeStatus::Open;
  }

  AsyncConfig config_;
  GreedyUtilities u_;
  std::vector<int> order_;
};

struct NodeSolution {
  std::vector<double> value;
  /// Indices into AsyncGame::moves(node) that maximize the mover's value.
  std::vector<std::size_t> optimal;
};

struct SolvedTree {
  std::vector<double> root_value;
  std::unordered_map<std::uint64_t, NodeSolution> solutions;
  /// Nodes where optimal moves disagree on someone else's value.
  std::size_t value_ambiguous_ties = 0;
};

namespace detail {

inline const NodeSolution& solve_node(const AsyncGame& game, const GameNode& node, SolvedTree& tree) {
  const std::uint64_t key = game.key(node);
  if (auto it = tree.solutions.find(key); it != tree.solutions.end()) return it->second;

  NodeSolution sol;
  if (node.terminal()) {
    sol.value = game.payoffs(node);
  } else {
    const int who = game.mover(node);
    const auto moves = game.moves(node);
    std::vector<std::vector<double>> child_values;
    child_values.reserve(moves.size());
    for (const auto& m : moves) child_values.push_back(solve_node(game, game.apply_move(node, m), tree).value);
    double best = child_values.front()[static_cast<std::size_t>(who - 1)];
    for (const auto& v : child_values) best = std::max(best, v[static_cast<std::size_t>(who - 1)]);
    for (std::size_t idx = 0; idx < moves.size(); ++idx)
      if (child_values[idx][static_cast<std::size_t>(who - 1)] >= best - kStrictTol) sol.optimal.push_back(idx);
    sol.value = child_values[sol.optimal.front()];
    for (std::size_t idx : sol.optimal) {
      if (child_values[idx] != sol.value) {
        ++tree.value_ambiguous_ties;
        break;
      }
    }
  }
  return tree.solutions.emplace(key, std::move(sol)).first->second;
}

}  // namespace detail

/// Backward induction over the depth-bounded tree. Ties are kept in
/// NodeSolution::optimal; the node value follows the first optimal move.
inline SolvedTree backward_induction(const AsyncGame& game) {
  SolvedTree tree;
  tree.root_value = detail::solve_node(game, game.root(), tree).value;
  return tree;
}

struct Theorem2Report {
  bool pass = false;
  std::size_t nodes = 0;
  std::size_t learning_terminals = 0;
  std::vector<double> root_value;
  std::vector<std::string> counterexamples;
};

/// Checks on the solved tree:
///  (a) every move that ends the game by someone learning leaves its mover
///      strictly negative, and passing instead is strictly better for her;
///  (b) no learning-terminal node is reachable along optimal moves;
/// plus the structural invariants (knowledge only grows, the mover's own
/// knowledge never changes, the last mover is never a learner) and a zero
/// root value.
inline Theorem2Report verify_theorem2(const AsyncGame& game) {
  Theorem2Report report;
  SolvedTree tree = backward_induction(game);
  report.root_value = tree.root_value;
  const int n = game.config().n;

  auto describe = [&](const GameNode& node, const Move& m) {
    std::string s = "depth " + std::to_string(node.depth) + " mover " + std::to_string(game.mover(node)) + " known [";
    for (const auto& c : node.knowledge.known) s += std::to_string(c.mask()) + " ";
    s += "] disclose " + std::to_string(m.disclosed.mask()) + " to " + std::to_string(m.recipients.mask());
    return s;
  };

  std::unordered_set<std::uint64_t> seen;
  std::vector<GameNode> stack{game.root()};
  while (!stack.empty()) {
    GameNode node = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(game.key(node)).second) continue;
    ++report.nodes;
    if (node.terminal()) {
      if (node.status == NodeStatus::Learned) ++report.learning_terminals;
      continue;
    }
    const int who = game.mover(node);
    const auto w = static_cast<std::size_t>(who - 1);
    const GameNode passed = game.apply_move(node, Move{});
    const double pass_value = detail::solve_node(game, passed, tree).value[w];
    for (const auto& m : game.moves(node)) {
      GameNode child = game.apply_move(node, m);
      for (int i = 1; i <= n; ++i)
        if (!node.knowledge.of(i).subset_of(child.knowledge.of(i)))
          report.counterexamples.push_back("knowledge shrank: " + describe(node, m));
      if (child.knowledge.of(who) != node.knowledge.of(who))
        report.counterexamples.push_back("mover gained knowledge: " + describe(node, m));
      if (child.status == NodeStatus::Learned) {
        if (game.learned(child.knowledge).contains(who))
          report.counterexamples.push_back("last mover learned: " + describe(node, m));
        const double ending = game.payoffs(child)[w];
        if (!(ending < -kStrictTol))
          report.counterexamples.push_back("last mover not negative: " + describe(node, m));
        if (!(pass_value > ending + kStrictTol))
          report.counterexamples.push_back("pass does not improve: " + describe(node, m));
      }
      stack.push_back(std::move(child));
    }
  }

  // (b): every node reachable through optimal moves.
  std::unordered_set<std::uint64_t> on_path;
  stack.assign(1, game.root());
  while (!stack.empty()) {
    GameNode node = std::move(stack.back());
    stack.pop_back();
    if (!on_path.insert(game.key(node)).second) continue;
    if (node.status == NodeStatus::Learned) {
      report.counterexamples.push_back("learning terminal on an SPE path at depth " + std::to_string(node.depth));
      continue;
    }
    if (node.terminal()) continue;
    const auto moves = game.moves(node);
    for (std::size_t idx : tree.solutions.at(game.key(node)).optimal) stack.push_back(game.apply_move(node, moves[idx]));
  }

  for (double v : report.root_value)
    if (v != 0.0) {
      report.counterexamples.push_back("root SPE value is not zero");
      break;
    }
  report.pass = report.counterexamples.empty();
  return report;
}

}  // namespace ratshare
