#include "maxgame/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace maxgame {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw DomainError(std::string("missing numeric field \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

nlohmann::json distribution_to_json(const DiscreteDistribution& d) {
  json points = json::array();
  for (const auto& pt : d.points()) points.push_back({pt.x, pt.p});
  return json{{"points", std::move(points)}};
}

DiscreteDistribution distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("points") || !j.at("points").is_array()) {
    throw DomainError("distribution JSON must be an object with a \"points\" array");
  }
  std::vector<MassPoint> points;
  for (const auto& entry : j.at("points")) {
    if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_number() ||
        !entry.at(1).is_number()) {
      throw DomainError("each distribution point must be a numeric [x, p] pair");
    }
    points.push_back({entry.at(0).get<double>(), entry.at(1).get<double>()});
  }
  return DiscreteDistribution(std::move(points));
}

nlohmann::json strategy_to_json(const EquilibriumStrategy& eq) {
  return json{{"n", eq.config.n},
              {"mu", eq.config.mu},
              {"regime", regime_name(eq.regime)},
              {"a", eq.a},
              {"s", eq.s}};
}

EquilibriumStrategy strategy_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("regime") || !j.at("regime").is_string()) {
    throw DomainError("strategy JSON must carry n, mu, regime, a, s");
  }
  EquilibriumStrategy eq;
  eq.config.n = j.at("n").get<int>();
  eq.config.mu = require_number(j, "mu");
  eq.a = require_number(j, "a");
  eq.s = require_number(j, "s");
  const std::string regime = j.at("regime").get<std::string>();
  if (regime == "Interior") {
    eq.regime = Regime::Interior;
  } else if (regime == "Atom") {
    eq.regime = Regime::Atom;
  } else {
    throw DomainError("unknown regime \"" + regime + "\"");
  }
  if (eq.config.n < 2) throw NOutOfRange(eq.config.n);
  eq.exponent = 1.0 / (eq.config.n - 1);
  return eq;
}

nlohmann::json report_to_json(const BestResponseReport& report) {
  return json{{"value", report.value},
              {"margin", report.margin},
              {"grid_size", report.grid_size},
              {"deviation", distribution_to_json(report.deviation)}};
}

nlohmann::json report_to_json(const SimulationReport& report) {
  return json{{"trials", report.trials},
              {"seed", report.seed},
              {"wins", report.wins},
              {"atom_draws", report.atom_draws},
              {"empirical_means", report.empirical_means},
              {"win_freq", report.win_freq},
              {"ci_radius", report.ci_radius},
              {"tie_events", report.tie_events},
              {"full_tie_events", report.full_tie_events}};
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "n,mu,a,s,regime\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += format_real(row.mu);
    out += ',';
    out += format_real(row.a);
    out += ',';
    out += format_real(row.s);
    out += ',';
    out += regime_name(row.regime);
    out += '\n';
  }
  return out;
}

std::string report_to_csv(const SimulationReport& report) {
  std::string out = "player,wins,win_freq,empirical_mean,atom_draws,ci_radius\n";
  for (std::size_t p = 0; p < report.wins.size(); ++p) {
    out += std::to_string(p);
    out += ',';
    out += std::to_string(report.wins[p]);
    out += ',';
    out += format_real(report.win_freq[p]);
    out += ',';
    out += format_real(report.empirical_means[p]);
    out += ',';
    out += std::to_string(report.atom_draws[p]);
    out += ',';
    out += format_real(report.ci_radius[p]);
    out += '\n';
  }
  return out;
}

std::string curve_to_csv(const WinCurve& curve, double mu, int m) {
  if (m < 2) throw DomainError("curve export needs a grid of at least 2 points");
  // same grid the oracle samples, without the oracle's floor on m
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(m) + 3 * curve.atom_positions().size() + 8);
  for (int i = 0; i < m; ++i) {
    grid.push_back(static_cast<double>(i) / static_cast<double>(m - 1));
  }
  grid.push_back(mu);
  for (double b : curve.breakpoints()) grid.push_back(b);
  const double h = 1.0 / (10.0 * m);
  for (double atom : curve.atom_positions()) {
    grid.push_back(atom);
    if (atom + h <= 1.0) grid.push_back(atom + h);
    if (atom - h >= 0.0) grid.push_back(atom - h);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const double denom = curve.player_count() * mu;
  std::string out = "x,w,line\n";
  for (double x : grid) {
    out += format_real(x);
    out += ',';
    out += format_real(curve.at(x));
    out += ',';
    out += format_real(x / denom);
    out += '\n';
  }
  return out;
}

}  // namespace maxgame
