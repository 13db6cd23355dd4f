// ratshare: command-line front end for dealing, reconstruction, game
// analysis, verification sweeps and simulation.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ratshare/equilibrium.hpp"
#include "ratshare/error.hpp"
#include "ratshare/io.hpp"
#include "ratshare/montecarlo.hpp"
#include "ratshare/parallel.hpp"
#include "ratshare/shamir.hpp"
#include "ratshare/suites.hpp"

namespace {

using ratshare::Error;
using ratshare::ErrorCode;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

struct ShareArgs {
  std::uint64_t p = 0;
  int k = 0;
  int n = 0;
  std::uint64_t secret = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct ReconstructArgs {
  std::optional<std::uint64_t> p;
  std::string shares;
  std::string sidecar;
};

struct AnalyzeArgs {
  std::string config;
};

struct VerifyArgs {
  std::string suite = "all";
  int max_n = 5;
  std::uint64_t seed = 0;
};

struct SimulateArgs {
  std::string config;
  std::string profile;
  std::uint64_t samples = 100'000;
  std::optional<std::uint64_t> seed;
  unsigned shards = 1;
};

std::filesystem::path sidecar_for(const std::filesystem::path& csv) {
  auto side = csv;
  side.replace_extension(".json");
  return side;
}

ratshare::io::GameConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadConfig, "cannot open config '" + path + "'");
  return ratshare::io::parse_game_config(in);
}

int run_share(const ShareArgs& a) {
  const ratshare::PrimeField field(a.p);
  if (a.secret >= a.p) throw Error(ErrorCode::BadConfig, "secret must be below p");
  const auto dealing = ratshare::deal(ratshare::FieldElement(field, a.secret), a.k, a.n, a.seed);
  std::ostringstream csv;
  ratshare::io::write_shares_csv(csv, dealing.shares);
  if (a.out.empty()) {
    std::cout << csv.str();
    return kExitOk;
  }
  const std::filesystem::path csv_path(a.out);
  const auto side_path = sidecar_for(csv_path);
  std::ofstream csv_file(csv_path);
  std::ofstream side_file(side_path);
  if (!csv_file || !side_file) throw Error(ErrorCode::BadConfig, "cannot write '" + a.out + "'");
  csv_file << csv.str();
  side_file << ratshare::io::to_json(ratshare::io::ShareParams{a.p, a.k, a.n}).dump() << '\n';
  return kExitOk;
}

int run_reconstruct(const ReconstructArgs& a) {
  std::optional<ratshare::io::ShareParams> params;
  std::filesystem::path side = a.sidecar.empty() ? sidecar_for(a.shares) : std::filesystem::path(a.sidecar);
  if (std::filesystem::exists(side)) {
    std::ifstream in(side);
    try {
      params = ratshare::io::parse_share_params(json::parse(in));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::BadConfig, std::string("malformed sidecar: ") + e.what());
    }
  } else if (!a.sidecar.empty()) {
    throw Error(ErrorCode::BadConfig, "cannot open sidecar '" + a.sidecar + "'");
  }
  const std::uint64_t p = a.p ? *a.p : (params ? params->p : 0);
  if (p == 0) throw Error(ErrorCode::BadConfig, "--p is required when no sidecar is present");
  if (params && params->p != p) throw Error(ErrorCode::BadConfig, "--p disagrees with the sidecar");

  std::ifstream in(a.shares);
  if (!in) throw Error(ErrorCode::BadConfig, "cannot open share file '" + a.shares + "'");
  const auto shares = ratshare::io::read_shares_csv(in, p);
  const auto secret = ratshare::reconstruct(shares, p);
  if (params && static_cast<std::size_t>(params->k) > shares.size())
    std::cerr << "warning: " << shares.size() << " share(s) supplied but the threshold is " << params->k
              << "; the result is not the secret\n";
  std::cout << secret.value() << '\n';
  return kExitOk;
}

int run_analyze(const AnalyzeArgs& a) {
  const auto cfg = load_config(a.config);
  json report;
  if (const auto* cg = std::get_if<ratshare::CommonGoodUtilities>(&cfg.utilities)) {
    report = ratshare::io::to_json(ratshare::verify_theorem3(cfg.access, *cg));
    report["model"] = "common_good";
    report["good_kind"] = to_string(ratshare::CommonGoodUtilities::kind);
    if (cfg.profile) {
      const auto check = ratshare::check_profile(cfg.access, *cg, *cfg.profile);
      json responses = json::array();
      for (const auto& br : check.responses)
        responses.push_back(json{{"kind", to_string(br.kind)}, {"margin", br.margin}});
      report["profile_check"] = json{{"profile", cfg.profile->values()},
                                     {"responses", responses},
                                     {"inessential", check.inessential},
                                     {"is_equilibrium", check.is_equilibrium}};
    }
  } else {
    const auto& greedy = std::get<ratshare::GreedyUtilities>(cfg.utilities);
    if (!cfg.access.is_threshold())
      throw Error(ErrorCode::BadConfig, "the greedy model is defined for threshold structures only");
    const ratshare::BroadcastGame game(cfg.access.n(), cfg.access.threshold_k(), greedy);
    report = ratshare::io::to_json(ratshare::analyze_broadcast(game));
    report["model"] = "greedy";
    report["good_kind"] = to_string(ratshare::GreedyUtilities::kind);
    report["axioms_hold"] = ratshare::greedy_axiom_audit(greedy);
  }
  report["access"] = ratshare::io::to_json(cfg.access);
  std::cout << report.dump(2) << '\n';
  return kExitOk;
}

int run_verify(const VerifyArgs& a) {
  if (a.max_n < 2 || a.max_n > 8) throw Error(ErrorCode::BadConfig, "--max-n must be in [2, 8]");
  std::vector<std::string> names;
  if (a.suite == "all") {
    names = ratshare::suites::suite_names();
  } else {
    const auto& known = ratshare::suites::suite_names();
    if (std::find(known.begin(), known.end(), a.suite) == known.end())
      throw Error(ErrorCode::BadConfig, "unknown suite '" + a.suite + "'");
    names.push_back(a.suite);
  }
  std::ostringstream out;
  bool pass = true;
  for (const auto& name : names) {
    const auto result = ratshare::suites::run_suite(name, a.seed, a.max_n);
    for (const auto& inst : result.instances) out << inst.dump() << '\n';
    out << json{{"suite", name}, {"summary", true}, {"instances", result.instances.size()}, {"pass", result.pass}}.dump()
        << '\n';
    pass = pass && result.pass;
  }
  out << json{{"suite", a.suite}, {"seed", a.seed}, {"max_n", a.max_n}, {"pass", pass}}.dump() << '\n';
  std::cout << out.str();
  return pass ? kExitOk : kExitCheckFailed;
}

std::vector<double> parse_profile_flag(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadConfig, "malformed profile entry '" + item + "'");
    }
    if (used != item.size()) throw Error(ErrorCode::BadConfig, "malformed profile entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int run_simulate(const SimulateArgs& a) {
  const auto cfg = load_config(a.config);
  const auto* cg = std::get_if<ratshare::CommonGoodUtilities>(&cfg.utilities);
  if (cg == nullptr) throw Error(ErrorCode::BadConfig, "simulate needs the common_good model");
  std::optional<ratshare::StrategyProfile> profile = cfg.profile;
  if (!a.profile.empty()) {
    auto alpha = parse_profile_flag(a.profile);
    if (static_cast<int>(alpha.size()) != cfg.access.n())
      throw Error(ErrorCode::BadConfig, "profile has " + std::to_string(alpha.size()) + " entries, n=" +
                                            std::to_string(cfg.access.n()));
    profile = ratshare::StrategyProfile(std::move(alpha));
  }
  if (!profile) throw Error(ErrorCode::BadConfig, "no profile given (use --profile or the config's 'profile')");
  const std::uint64_t seed = a.seed ? *a.seed : cfg.seed.value_or(0);
  const auto sim = ratshare::simulate(cfg.access, *cg, *profile, a.samples, seed, a.shards);
  const auto exact = ratshare::exact_utilities(cfg.access, *cg, *profile);
  std::cout << ratshare::io::to_json(sim, exact).dump() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational secret sharing: Shamir dealing, equilibrium analysis and verification"};
  app.require_subcommand(1);

  ShareArgs share;
  auto* share_cmd = app.add_subcommand("share", "Deal Shamir shares of a secret");
  share_cmd->add_option("--p", share.p, "Prime modulus")->required();
  share_cmd->add_option("--k", share.k, "Threshold")->required();
  share_cmd->add_option("--n", share.n, "Number of shares")->required();
  share_cmd->add_option("--secret", share.secret, "Secret in [0, p)");
  share_cmd->add_option("--seed", share.seed, "Seed for the polynomial coefficients");
  share_cmd->add_option("--out", share.out, "CSV path; a .json sidecar is written next to it");

  ReconstructArgs recon;
  auto* recon_cmd = app.add_subcommand("reconstruct", "Interpolate the secret from a share file");
  recon_cmd->add_option("--p", recon.p, "Prime modulus (defaults to the sidecar's)");
  recon_cmd->add_option("shares", recon.shares, "Share CSV")->required();
  recon_cmd->add_option("--sidecar", recon.sidecar, "JSON sidecar (defaults to the CSV path with .json)");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Equilibrium report for a game config");
  analyze_cmd->add_option("--config", analyze.config, "Game config JSON")->required();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification sweep");
  verify_cmd->add_option("--suite", verify.suite, "theorem3|ht|async|lemma1|shamir|montecarlo|all");
  verify_cmd->add_option("--max-n", verify.max_n, "Largest n for the theorem3, ht and montecarlo sweeps");
  verify_cmd->add_option("--seed", verify.seed, "Seed for randomized sweeps");

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of expected utilities");
  simulate_cmd->add_option("--config", simulate.config, "Game config JSON")->required();
  simulate_cmd->add_option("--profile", simulate.profile, "Comma-separated disclosure probabilities");
  simulate_cmd->add_option("--samples", simulate.samples, "Sample count")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", simulate.seed, "Seed (defaults to the config's, then 0)");
  simulate_cmd->add_option("--shards", simulate.shards, "Independent sample shards")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    ratshare::threads_from_env();
    if (*share_cmd) return run_share(share);
    if (*recon_cmd) return run_reconstruct(recon);
    if (*analyze_cmd) return run_analyze(analyze);
    if (*verify_cmd) return run_verify(verify);
    if (*simulate_cmd) return run_simulate(simulate);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::DegenerateTie ? kExitDegenerate : kExitUsage;
  }
  return kExitUsage;
}
