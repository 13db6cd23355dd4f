#pragma once

// JSON configs, share files and report serialization.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ratshare/access_structure.hpp"
#include "ratshare/async_game.hpp"
#include "ratshare/equilibrium.hpp"
#include "ratshare/error.hpp"
#include "ratshare/finite_field.hpp"
#include "ratshare/montecarlo.hpp"
#include "ratshare/recon_game.hpp"
#include "ratshare/shamir.hpp"

namespace ratshare::io {

using json = nlohmann::json;

namespace detail {

inline void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw Error(ErrorCode::BadConfig, std::string(what) + " must be a JSON object");
}

inline void allow_keys(const json& j, std::initializer_list<const char*> keys, const char* what) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, _] : j.items())
    if (!allowed.contains(key)) throw Error(ErrorCode::BadConfig, std::string("unknown key '") + key + "' in " + what);
}

inline const json& need(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw Error(ErrorCode::BadConfig, std::string("missing '") + key + "' in " + what);
  return j.at(key);
}

inline int need_int(const json& j, const char* key, const char* what) {
  const json& v = need(j, key, what);
  if (!v.is_number_integer()) throw Error(ErrorCode::BadConfig, std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

inline double need_number(const json& j, const char* key, const char* what) {
  const json& v = need(j, key, what);
  if (!v.is_number()) throw Error(ErrorCode::BadConfig, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

inline std::vector<double> number_list(const json& v, const char* what) {
  if (!v.is_array()) throw Error(ErrorCode::BadConfig, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw Error(ErrorCode::BadConfig, std::string(what) + " entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Access structures: {"type":"threshold","n":3,"k":2} or
// {"type":"general","n":3,"min_coalitions":[[1,2],[3]]}

inline AccessStructure parse_access(const json& j) {
  detail::require_object(j, "access structure");
  const json& type = detail::need(j, "type", "access structure");
  if (type == "threshold") {
    detail::allow_keys(j, {"type", "n", "k"}, "threshold access structure");
    return AccessStructure::threshold(detail::need_int(j, "n", "access structure"),
                                      detail::need_int(j, "k", "access structure"));
  }
  if (type == "general") {
    detail::allow_keys(j, {"type", "n", "min_coalitions"}, "general access structure");
    const int n = detail::need_int(j, "n", "access structure");
    const json& list = detail::need(j, "min_coalitions", "access structure");
    if (!list.is_array()) throw Error(ErrorCode::BadConfig, "min_coalitions must be an array");
    std::vector<Coalition> coalitions;
    for (const auto& c : list) {
      if (!c.is_array()) throw Error(ErrorCode::BadConfig, "each coalition must be an array of ids");
      std::vector<int> ids;
      for (const auto& id : c) {
        if (!id.is_number_integer()) throw Error(ErrorCode::BadConfig, "participant ids must be integers");
        ids.push_back(id.get<int>());
        if (ids.back() < 1 || ids.back() > n)
          throw Error(ErrorCode::OutOfRangeParticipant, "participant " + std::to_string(ids.back()));
      }
      coalitions.push_back(Coalition::from_ids(ids));
    }
    return AccessStructure::general(n, coalitions);
  }
  throw Error(ErrorCode::BadConfig, "access structure type must be 'threshold' or 'general'");
}

inline json coalition_list(const std::vector<Coalition>& cs) {
  json out = json::array();
  for (Coalition c : cs) out.push_back(c.members());
  return out;
}

inline json to_json(const AccessStructure& gamma) {
  if (gamma.is_threshold()) return json{{"type", "threshold"}, {"n", gamma.n()}, {"k", gamma.threshold_k()}};
  return json{{"type", "general"}, {"n", gamma.n()}, {"min_coalitions", coalition_list(gamma.min_coalitions())}};
}

// ---------------------------------------------------------------------------
// Utility models: {"model":"common_good","N":[...],"c":1} or
// {"model":"greedy","A":3,"B":1}; greedy A/B default to n and 1.

using UtilityModel = std::variant<CommonGoodUtilities, GreedyUtilities>;

inline UtilityModel parse_utilities(const json& j, int n) {
  detail::require_object(j, "utility model");
  const json& model = detail::need(j, "model", "utility model");
  if (model == "common_good") {
    detail::allow_keys(j, {"model", "N", "c"}, "common_good model");
    auto values = detail::number_list(detail::need(j, "N", "common_good model"), "N");
    if (static_cast<int>(values.size()) != n)
      throw Error(ErrorCode::BadConfig, "N has " + std::to_string(values.size()) + " entries, n=" + std::to_string(n));
    return CommonGoodUtilities(std::move(values), detail::need_number(j, "c", "common_good model"));
  }
  if (model == "greedy") {
    detail::allow_keys(j, {"model", "A", "B"}, "greedy model");
    const double a = j.contains("A") ? detail::need_number(j, "A", "greedy model") : static_cast<double>(n);
    const double b = j.contains("B") ? detail::need_number(j, "B", "greedy model") : 1.0;
    return GreedyUtilities(a, b, n);
  }
  throw Error(ErrorCode::BadConfig, "utility model must be 'common_good' or 'greedy'");
}

struct GameConfig {
  AccessStructure access;
  UtilityModel utilities;
  std::optional<StrategyProfile> profile;
  std::optional<std::uint64_t> seed;
};

inline StrategyProfile parse_profile(const json& j, int n) {
  auto alpha = detail::number_list(j, "profile");
  if (static_cast<int>(alpha.size()) != n)
    throw Error(ErrorCode::BadConfig, "profile has " + std::to_string(alpha.size()) + " entries, n=" + std::to_string(n));
  return StrategyProfile(std::move(alpha));
}

/// Strict parse of {"access":..., "utilities":..., "profile":[...], "seed":S}.
inline GameConfig parse_game_config(const json& j) {
  detail::require_object(j, "game config");
  detail::allow_keys(j, {"access", "utilities", "profile", "seed"}, "game config");
  AccessStructure access = parse_access(detail::need(j, "access", "game config"));
  UtilityModel utilities = parse_utilities(detail::need(j, "utilities", "game config"), access.n());
  GameConfig cfg{std::move(access), std::move(utilities), std::nullopt, std::nullopt};
  if (j.contains("profile")) cfg.profile = parse_profile(j.at("profile"), cfg.access.n());
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw Error(ErrorCode::BadConfig, "seed must be a non-negative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  return cfg;
}

inline GameConfig parse_game_config(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadConfig, std::string("malformed JSON: ") + e.what());
  }
  return parse_game_config(j);
}

// ---------------------------------------------------------------------------
// Shares: CSV "participant,x,y" with header, plus a JSON sidecar
// {"p":7,"k":2,"n":3}.

struct ShareParams {
  std::uint64_t p;
  int k;
  int n;
};

inline void write_shares_csv(std::ostream& out, const std::vector<Share>& shares) {
  out << "participant,x,y\n";
  for (const auto& s : shares) out << s.participant << ',' << s.x.value() << ',' << s.y.value() << '\n';
}

inline std::vector<Share> read_shares_csv(std::istream& in, std::uint64_t p) {
  const PrimeField field(p);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::BadConfig, "share file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "participant,x,y") throw Error(ErrorCode::BadConfig, "share file header must be 'participant,x,y'");
  std::vector<Share> shares;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    long long participant = 0, x = 0, y = 0;
    char c1 = 0, c2 = 0;
    if (!(row >> participant >> c1 >> x >> c2 >> y) || c1 != ',' || c2 != ',' || !(row >> std::ws).eof() ||
        participant < 1 || x < 0 || y < 0 || static_cast<std::uint64_t>(x) >= p || static_cast<std::uint64_t>(y) >= p)
      throw Error(ErrorCode::BadConfig, "malformed share on line " + std::to_string(lineno));
    shares.push_back(Share{static_cast<int>(participant), FieldElement(field, static_cast<std::uint64_t>(x)),
                           FieldElement(field, static_cast<std::uint64_t>(y))});
  }
  if (shares.empty()) throw Error(ErrorCode::EmptyInput, "share file has no shares");
  return shares;
}

inline json to_json(const ShareParams& s) { return json{{"p", s.p}, {"k", s.k}, {"n", s.n}}; }

inline ShareParams parse_share_params(const json& j) {
  detail::require_object(j, "share sidecar");
  detail::allow_keys(j, {"p", "k", "n"}, "share sidecar");
  const json& p = detail::need(j, "p", "share sidecar");
  if (!p.is_number_unsigned()) throw Error(ErrorCode::BadConfig, "'p' must be a positive integer");
  return ShareParams{p.get<std::uint64_t>(), detail::need_int(j, "k", "share sidecar"),
                     detail::need_int(j, "n", "share sidecar")};
}

// ---------------------------------------------------------------------------
// Reports

inline json profile_list(const std::vector<Coalition>& profiles, int n) {
  json out = json::array();
  for (Coalition c : profiles) out.push_back(c.characteristic(n));
  return out;
}

inline json to_json(const EquilibriumReport& r) {
  json survives = json::array();
  for (const auto& [profile, ok] : r.survives_dominance)
    survives.push_back(json{{"profile", profile.characteristic(r.n)}, {"survives", ok}});
  json deletions = json::array();
  for (const auto& d : r.deletions)
    deletions.push_back(json{{"player", d.player}, {"removed", to_string(d.removed)}, {"dominated_by", to_string(d.dominated_by)}, {"round", d.round}});
  return json{{"brute_force_ne", profile_list(r.brute_force_ne, r.n)},
              {"predicted_ne", profile_list(r.predicted_ne, r.n)},
              {"payoff_equivalent_ne", profile_list(r.payoff_equivalent_ne, r.n)},
              {"survives_dominance", survives},
              {"dominance_survivors", profile_list(r.dominance_survivors, r.n)},
              {"deletions", deletions},
              {"match", r.match},
              {"flags", r.flags}};
}

inline json to_json(const Theorem2Report& r) {
  return json{{"pass", r.pass},
              {"nodes", r.nodes},
              {"learning_terminals", r.learning_terminals},
              {"root_value", r.root_value},
              {"counterexamples", r.counterexamples}};
}

inline json to_json(const SimResult& r, const std::vector<double>& exact) {
  return json{{"means", r.means}, {"stderr", r.stderrs}, {"exact", exact}, {"samples", r.samples}, {"seed", r.seed}};
}

}  // namespace ratshare::io
