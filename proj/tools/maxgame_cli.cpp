// Command-line front end: solve, sweep, verify, refute, simulate, curve.
// Machine-readable payload goes to stdout (or --out); logs go to stderr.
// Exit codes: 0 success, 1 negative verification/refutation, 2 usage
// error, 3 numeric failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxgame/core_types.hpp"
#include "maxgame/equilibrium.hpp"
#include "maxgame/json_io.hpp"
#include "maxgame/oracle.hpp"
#include "maxgame/payoff.hpp"
#include "maxgame/simulate.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  file << payload;
  if (!file.good()) {
    throw std::runtime_error("failed to write " + out_path);
  }
}

maxgame::DiscreteDistribution load_distribution(const std::string& path) {
  std::ifstream file(path);
  if (!file.good()) {
    throw maxgame::DomainError("cannot open " + path);
  }
  json j;
  file >> j;
  return maxgame::distribution_from_json(j);
}

std::vector<double> parse_csv_reals(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    values.push_back(std::stod(item, &used));
    if (used != item.size()) {
      throw maxgame::DomainError("bad real value \"" + item + "\"");
    }
  }
  return values;
}

struct SolveArgs {
  int n = 0;
  double mu = 0.0;
  bool as_json = false;
};

struct SweepArgs {
  double mu = 0.0;
  int n_min = 0;
  int n_max = 0;
  std::string out;
};

struct VerifyArgs {
  int n = 0;
  double mu = 0.0;
  int grid = maxgame::kDefaultGrid;
  double slack = maxgame::kDefaultSlack;
};

struct RefuteArgs {
  int n = 0;
  double mu = 0.0;
  int grid = maxgame::kDefaultGrid;
  double slack = maxgame::kDefaultSlack;
  std::string profile_path;
  std::string shifted;
};

struct SimulateArgs {
  int n = 0;
  double mu = 0.0;
  long long trials = 1000000;
  std::uint64_t seed = 0;
  std::string deviation_path;
  bool as_csv = false;
};

struct CurveArgs {
  int n = 0;
  double mu = 0.0;
  int grid = 1000;
  std::string out;
};

int run_solve(const SolveArgs& args) {
  const auto cfg = maxgame::validate_config(args.n, args.mu);
  const auto eq = maxgame::solve(cfg);
  if (args.as_json) {
    emit(maxgame::strategy_to_json(eq).dump() + "\n", "");
  } else {
    std::string text;
    text += "n " + std::to_string(eq.config.n) + "\n";
    text += "mu " + maxgame::format_real(eq.config.mu) + "\n";
    text += std::string("regime ") + maxgame::regime_name(eq.regime) + "\n";
    text += "a " + maxgame::format_real(eq.a) + "\n";
    text += "s " + maxgame::format_real(eq.s) + "\n";
    emit(text, "");
  }
  return 0;
}

int run_sweep(const SweepArgs& args) {
  const auto rows = maxgame::sweep(args.mu, args.n_min, args.n_max);
  emit(maxgame::sweep_to_csv(rows), args.out);
  return 0;
}

int run_verify(const VerifyArgs& args) {
  const auto cfg = maxgame::validate_config(args.n, args.mu);
  const auto result = maxgame::verify_equilibrium(cfg, args.grid, args.slack);
  json payload = maxgame::report_to_json(result.report);
  payload["pass"] = result.ok;
  payload["slack"] = args.slack;
  emit(payload.dump() + "\n", "");
  return result.ok ? 0 : 1;
}

int run_refute(const RefuteArgs& args) {
  const auto cfg = maxgame::validate_config(args.n, args.mu);
  maxgame::BestResponseReport report = [&] {
    if (!args.shifted.empty()) {
      const auto values = parse_csv_reals(args.shifted);
      maxgame::ShiftedCandidate cand =
          values.size() == 1
              ? maxgame::make_shifted_candidate(cfg, values[0])
              : (values.size() == 3
                     ? maxgame::make_shifted_candidate(cfg, values[0], values[1], values[2])
                     : throw maxgame::DomainError("--shifted expects t or t,a,s"));
      return maxgame::refute_shifted(cand, args.grid, args.slack);
    }
    return maxgame::refute_profile(load_distribution(args.profile_path), cfg, args.grid,
                                   args.slack);
  }();
  json payload = maxgame::report_to_json(report);
  payload["refuted"] = true;
  payload["slack"] = args.slack;
  emit(payload.dump() + "\n", "");
  return 0;
}

int run_simulate(const SimulateArgs& args) {
  const auto cfg = maxgame::validate_config(args.n, args.mu);
  const auto eq = maxgame::solve(cfg);
  std::vector<maxgame::Strategy> strategies;
  strategies.reserve(static_cast<std::size_t>(cfg.n));
  if (!args.deviation_path.empty()) {
    strategies.emplace_back(load_distribution(args.deviation_path));
  } else {
    strategies.emplace_back(eq);
  }
  for (int p = 1; p < cfg.n; ++p) strategies.emplace_back(eq);
  const auto report = maxgame::run_tournament(strategies, args.trials, args.seed);
  if (args.as_csv) {
    emit(maxgame::report_to_csv(report), "");
  } else {
    emit(maxgame::report_to_json(report).dump() + "\n", "");
  }
  return 0;
}

int run_curve(const CurveArgs& args) {
  const auto cfg = maxgame::validate_config(args.n, args.mu);
  const auto curve = maxgame::WinCurve::vs_equilibrium(maxgame::solve(cfg));
  emit(maxgame::curve_to_csv(curve, cfg.mu, args.grid), args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  maxgame::apply_thread_cap();

  CLI::App app{"maxgame: equilibrium solver and verification toolkit for the "
               "fixed-mean highest-draw game"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* cmd_solve = app.add_subcommand("solve", "compute the symmetric equilibrium");
  cmd_solve->add_option("--n", solve_args.n, "player count")->required();
  cmd_solve->add_option("--mu", solve_args.mu, "common mean in (0,1)")->required();
  cmd_solve->add_flag("--json", solve_args.as_json, "emit JSON instead of key/value text");

  SweepArgs sweep_args;
  auto* cmd_sweep = app.add_subcommand("sweep", "equilibrium per n over a range, as CSV");
  cmd_sweep->add_option("--mu", sweep_args.mu, "common mean in (0,1)")->required();
  cmd_sweep->add_option("--n-min", sweep_args.n_min, "first player count")->required();
  cmd_sweep->add_option("--n-max", sweep_args.n_max, "last player count")->required();
  cmd_sweep->add_option("--out", sweep_args.out, "write CSV here instead of stdout");

  VerifyArgs verify_args;
  auto* cmd_verify = app.add_subcommand("verify", "grid best-response check of the equilibrium");
  cmd_verify->add_option("--n", verify_args.n, "player count")->required();
  cmd_verify->add_option("--mu", verify_args.mu, "common mean in (0,1)")->required();
  cmd_verify->add_option("--grid", verify_args.grid, "uniform grid size (>= 100)");
  cmd_verify->add_option("--slack", verify_args.slack, "margin accepted as zero");

  RefuteArgs refute_args;
  auto* cmd_refute = app.add_subcommand("refute", "find a profitable deviation against a profile");
  cmd_refute->add_option("--n", refute_args.n, "player count")->required();
  cmd_refute->add_option("--mu", refute_args.mu, "common mean in (0,1)")->required();
  cmd_refute->add_option("--grid", refute_args.grid, "uniform grid size (>= 100)");
  cmd_refute->add_option("--slack", refute_args.slack, "required margin");
  auto* profile_opt =
      cmd_refute->add_option("--profile", refute_args.profile_path, "distribution JSON file");
  auto* shifted_opt = cmd_refute->add_option(
      "--shifted", refute_args.shifted, "shifted-support candidate: t alone or t,a,s");
  profile_opt->excludes(shifted_opt);

  SimulateArgs simulate_args;
  auto* cmd_simulate = app.add_subcommand("simulate", "seeded tournament of equilibrium players");
  cmd_simulate->add_option("--n", simulate_args.n, "player count")->required();
  cmd_simulate->add_option("--mu", simulate_args.mu, "common mean in (0,1)")->required();
  cmd_simulate->add_option("--trials", simulate_args.trials, "trial count");
  cmd_simulate->add_option("--seed", simulate_args.seed, "RNG seed (mandatory: runs must be reproducible)")
      ->required();
  cmd_simulate->add_option("--deviation", simulate_args.deviation_path,
                           "player 1 plays this distribution JSON file");
  cmd_simulate->add_flag("--csv", simulate_args.as_csv, "emit row-per-player CSV instead of JSON");

  CurveArgs curve_args;
  auto* cmd_curve = app.add_subcommand("curve", "win curve CSV with the indifference line");
  cmd_curve->add_option("--n", curve_args.n, "player count")->required();
  cmd_curve->add_option("--mu", curve_args.mu, "common mean in (0,1)")->required();
  cmd_curve->add_option("--grid", curve_args.grid, "uniform grid size (>= 2)");
  cmd_curve->add_option("--out", curve_args.out, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*cmd_solve) return run_solve(solve_args);
    if (*cmd_sweep) return run_sweep(sweep_args);
    if (*cmd_verify) return run_verify(verify_args);
    if (*cmd_refute) {
      if (refute_args.profile_path.empty() && refute_args.shifted.empty()) {
        std::cerr << "refute needs --profile or --shifted\n";
        return 2;
      }
      return run_refute(refute_args);
    }
    if (*cmd_simulate) return run_simulate(simulate_args);
    if (*cmd_curve) return run_curve(curve_args);
  } catch (const maxgame::NoDeviationFound& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const maxgame::ConvergenceFailure& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const maxgame::DomainError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 2;
}
