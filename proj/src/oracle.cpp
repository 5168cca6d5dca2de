#include "maxgame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace maxgame {

namespace {

// Uniform m points plus forced structural values; min_m differs between
// the oracle (100) and the plain curve export (2).
std::vector<double> grid_points(const WinCurve& curve, double mu, int m, int min_m) {
  if (m < min_m) {
    throw DomainError("grid size must be at least " + std::to_string(min_m) + ", got " +
                      std::to_string(m));
  }
  if (!(mu > 0.0) || !(mu < 1.0)) throw MuOutOfRange(mu);
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
  return grid;
}

std::size_t segment_index(const std::vector<EnvelopePoint>& env, double x) {
  // index i with env[i].x <= x <= env[i+1].x
  auto it = std::upper_bound(env.begin(), env.end(), x,
                             [](double v, const EnvelopePoint& pt) { return v < pt.x; });
  if (it == env.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - env.begin()) - 1;
  if (i + 1 >= env.size()) i = env.size() - 2;
  return i;
}

// Two-point deviation on the envelope segment bracketing mu; the mean
// constraint fixes the weights. Collapses to one atom when mu hits a
// vertex.
DiscreteDistribution segment_deviation(const std::vector<EnvelopePoint>& env, double mu) {
  const std::size_t i = segment_index(env, mu);
  const EnvelopePoint& left = env[i];
  const EnvelopePoint& right = env[i + 1];
  if (mu == left.x) return DiscreteDistribution({{left.x, 1.0}});
  if (mu == right.x) return DiscreteDistribution({{right.x, 1.0}});
  const double width = right.x - left.x;
  const double p_right = (mu - left.x) / width;
  const double p_left = (right.x - mu) / width;
  if (!(p_right > 0.0)) return DiscreteDistribution({{left.x, 1.0}});
  if (!(p_left > 0.0)) return DiscreteDistribution({{right.x, 1.0}});
  return DiscreteDistribution({{left.x, p_left}, {right.x, p_right}});
}

DiscreteDistribution discretize_shape(double t, double s, double a, int n, int cells) {
  if (cells < 2) throw DomainError("discretization needs at least 2 cells");
  const double c = 1.0 / (n - 1);
  const double width = s - t;
  const double cont = 1.0 - a;
  // F(x) = (1-a)*((x-t)/(s-t))^c; the first moment over [t, x] has the
  // closed antiderivative A(x) = F(x)*(x + (n-1)t)/n.
  const auto cdf_at = [&](double x) { return cont * std::pow((x - t) / width, c); };
  const auto moment_at = [&](double x) { return cdf_at(x) * (x + (n - 1) * t) / n; };

  std::vector<MassPoint> pts;
  pts.reserve(static_cast<std::size_t>(cells) + 1);
  double prev_f = 0.0;
  double prev_m = 0.0;
  std::size_t heaviest = 0;
  for (int k = 1; k <= cells; ++k) {
    const double xk = t + width * (static_cast<double>(k) / cells);
    const double f = (k == cells) ? cont : cdf_at(xk);
    const double mom = (k == cells) ? cont * (s + (n - 1) * t) / n : moment_at(xk);
    const double mass = f - prev_f;
    pts.push_back({(mom - prev_m) / mass, mass});
    if (mass > pts[heaviest].p) heaviest = pts.size() - 1;
    prev_f = f;
    prev_m = mom;
  }
  // push the rounding deficit onto the heaviest cell so weights add to 1-a
  double total = 0.0;
  for (const auto& pt : pts) total += pt.p;
  pts[heaviest].p += cont - total;
  if (a > 0.0) pts.push_back({1.0, a});
  return DiscreteDistribution(std::move(pts));
}

}  // namespace

std::vector<EnvelopePoint> concave_envelope(const std::vector<EnvelopePoint>& samples) {
  if (samples.size() < 2) {
    throw InsufficientPoints("concave envelope needs at least 2 samples");
  }
  // collapse duplicate x to the highest w first
  std::vector<EnvelopePoint> pts;
  pts.reserve(samples.size());
  for (const auto& pt : samples) {
    if (!pts.empty()) {
      if (pt.x < pts.back().x) throw DomainError("envelope samples must be sorted by x");
      if (pt.x == pts.back().x) {
        if (pt.w > pts.back().w) pts.back().w = pt.w;
        continue;
      }
    }
    pts.push_back(pt);
  }
  if (pts.size() < 2) throw InsufficientPoints("concave envelope needs 2 distinct x values");

  std::vector<EnvelopePoint> hull;
  hull.reserve(pts.size());
  for (const auto& pt : pts) {
    // keep the last vertex only while the slope strictly decreases across it
    while (hull.size() >= 2) {
      const EnvelopePoint& a = hull[hull.size() - 2];
      const EnvelopePoint& b = hull.back();
      const double cross = (b.x - a.x) * (pt.w - b.w) - (b.w - a.w) * (pt.x - b.x);
      if (cross < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  return hull;
}

double envelope_value(const std::vector<EnvelopePoint>& envelope, double x) {
  if (envelope.size() < 2) throw InsufficientPoints("envelope has no segment to evaluate");
  if (x <= envelope.front().x) return envelope.front().w;
  if (x >= envelope.back().x) return envelope.back().w;
  const std::size_t i = segment_index(envelope, x);
  const EnvelopePoint& left = envelope[i];
  const EnvelopePoint& right = envelope[i + 1];
  return left.w + (x - left.x) * (right.w - left.w) / (right.x - left.x);
}

std::vector<double> response_grid(const WinCurve& curve, double mu, int m) {
  return grid_points(curve, mu, m, 100);
}

std::vector<EnvelopePoint> sample_curve_serial(const WinCurve& curve,
                                               const std::vector<double>& grid) {
  std::vector<EnvelopePoint> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    samples[i] = {grid[i], curve.at(grid[i])};
  }
  return samples;
}

std::vector<EnvelopePoint> sample_curve(const WinCurve& curve, const std::vector<double>& grid) {
  std::vector<EnvelopePoint> samples(grid.size());
  const std::int64_t count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    samples[k] = {grid[k], curve.at(grid[k])};
  }
  return samples;
}

BestResponseReport best_response(const WinCurve& curve, double mu, int m) {
  const auto grid = response_grid(curve, mu, m);
  const auto samples = sample_curve(curve, grid);
  const auto env = concave_envelope(samples);
  const double value = envelope_value(env, mu);
  DiscreteDistribution deviation = segment_deviation(env, mu);
  // never report an unchecked number: the deviation must reproduce the value
  const double check = deviation_payoff(deviation, curve);
  if (std::abs(check - value) > 1e-12) {
    throw ConvergenceFailure("best-response report failed re-verification");
  }
  const double margin = check - 1.0 / curve.player_count();
  return BestResponseReport{check, margin, m, std::move(deviation)};
}

VerifyResult verify_equilibrium(const GameConfig& cfg, int m, double slack) {
  const EquilibriumStrategy eq = solve(cfg);
  BestResponseReport report = best_response(WinCurve::vs_equilibrium(eq), cfg.mu, m);
  const bool ok = report.margin <= slack;
  return VerifyResult{ok, std::move(report)};
}

BestResponseReport refute_profile(const DiscreteDistribution& profile, const GameConfig& cfg,
                                  int m, double slack) {
  profile.require_mean(cfg.mu);
  BestResponseReport report = best_response(WinCurve::vs_discrete(profile, cfg.n), cfg.mu, m);
  if (report.margin <= slack) {
    throw NoDeviationFound("no deviation beats the profile beyond the grid slack (margin " +
                           std::to_string(report.margin) + ")");
  }
  return report;
}

ShiftedCandidate make_shifted_candidate(const GameConfig& cfg, double t) {
  if (!(t > 0.0) || !(t < cfg.mu)) {
    throw DomainError("shift must lie strictly between 0 and mu");
  }
  const int n = cfg.n;
  double s = n * cfg.mu - (n - 1) * t;
  double a = 0.0;
  if (s > 1.0) {
    s = 1.0;
    const double load = s + (n - 1) * t;
    a = (n * cfg.mu - load) / (n - load);
  }
  return make_shifted_candidate(cfg, t, a, s);
}

ShiftedCandidate make_shifted_candidate(const GameConfig& cfg, double t, double a, double s) {
  if (!(t > 0.0) || !(t < s) || !(s <= 1.0)) {
    throw DomainError("shifted candidate needs 0 < t < s <= 1");
  }
  if (!(a >= 0.0) || !(a < 1.0)) {
    throw DomainError("shifted candidate needs atom weight in [0, 1)");
  }
  // mean identity: a*(n - [s+(n-1)t]) = n*mu - [s+(n-1)t]
  const double load = s + (cfg.n - 1) * t;
  const double residual = a * (cfg.n - load) - (cfg.n * cfg.mu - load);
  if (std::abs(residual) > 1e-9) {
    throw DomainError("shifted candidate (t, a, s) is inconsistent with the mean");
  }
  return ShiftedCandidate{cfg, t, a, s};
}

DiscreteDistribution discretize(const EquilibriumStrategy& eq, int cells) {
  return discretize_shape(0.0, eq.s, eq.a, eq.config.n, cells);
}

DiscreteDistribution discretize_shifted(const ShiftedCandidate& cand, int cells) {
  return discretize_shape(cand.t, cand.s, cand.a, cand.config.n, cells);
}

BestResponseReport refute_shifted(const ShiftedCandidate& cand, int m, double slack) {
  return refute_profile(discretize_shifted(cand, kDefaultGrid), cand.config, m, slack);
}

}  // namespace maxgame
