#include "maxgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxgame {

namespace {

constexpr double kBracketEps = 1e-16;
constexpr double kPhiTol = 1e-14;
constexpr int kMaxIterations = 200;
constexpr double kLimitPatch = 1e-13;  // |1-b| below this uses the b->1 limit
constexpr double kRegimeSlack = 1e-15; // n*mu <= 1 + slack classifies Interior

// phi(b) = (1-b)/(1-b^n) - mu, strictly decreasing on [0, 1]. The ratio
// tends to 1/n at b = 1; near there the quotient is 0/0, so the limit
// value is substituted. 1-b^n is computed through expm1 to keep accuracy
// once b^n approaches 1.
double phi(double b, int n, double mu) {
  if (std::abs(1.0 - b) < kLimitPatch) return 1.0 / n - mu;
  if (b <= 0.0) return 1.0 - mu;
  const double one_minus_bn = -std::expm1(static_cast<double>(n) * std::log(b));
  return (1.0 - b) / one_minus_bn - mu;
}

// (x)^e with the 0^positive = 0 convention; explicit log-domain form for
// large n where the exponent is extreme.
double pow_conv(double base, double e, int n) {
  if (base <= 0.0) return 0.0;
  if (n > 50) return std::exp(e * std::log(base));
  return std::pow(base, e);
}

SweepRow row_for(int n, double mu) {
  const EquilibriumStrategy eq = solve(GameConfig{n, mu});
  return SweepRow{n, mu, eq.a, eq.s, eq.regime};
}

}  // namespace

const char* regime_name(Regime regime) {
  return regime == Regime::Interior ? "Interior" : "Atom";
}

double solve_atom(const GameConfig& cfg) {
  const int n = cfg.n;
  const double mu = cfg.mu;
  if (n * mu <= 1.0 + kRegimeSlack) return 0.0;

  double lo = kBracketEps;
  double hi = 1.0 - kBracketEps;
  if (!(phi(lo, n, mu) > 0.0) || !(phi(hi, n, mu) < 0.0)) {
    throw ConvergenceFailure("atom fixed point is not bracketed");
  }
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = phi(mid, n, mu);
    // the stopping tolerance can leave 1-mid a few ulp past mu once
    // (1-a)^n underflows; project back into [0, mu]
    if (std::abs(fm) <= kPhiTol) return std::min(1.0 - mid, mu);
    if (fm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceFailure("atom fixed point did not reach tolerance in " +
                           std::to_string(kMaxIterations) + " bisection steps");
}

EquilibriumStrategy solve(const GameConfig& cfg) {
  const int n = cfg.n;
  const double mu = cfg.mu;
  EquilibriumStrategy eq;
  eq.config = cfg;
  eq.exponent = 1.0 / (n - 1);
  const double a = solve_atom(cfg);
  if (a == 0.0) {
    eq.regime = Regime::Interior;
    eq.a = 0.0;
    eq.s = std::min(n * mu, 1.0);
  } else {
    eq.regime = Regime::Atom;
    eq.a = a;
    eq.s = n * mu * std::pow(1.0 - a, static_cast<double>(n - 1));
  }
  return eq;
}

double cdf(const EquilibriumStrategy& eq, double x) {
  if (!(x >= 0.0) || x > 1.0) {
    throw DomainError("cdf argument must lie in [0, 1], got " + std::to_string(x));
  }
  if (x >= 1.0) return 1.0;
  if (x >= eq.s) return 1.0 - eq.a;
  return (1.0 - eq.a) * pow_conv(x / eq.s, eq.exponent, eq.config.n);
}

Realization quantile(const EquilibriumStrategy& eq, double u) {
  if (!(u >= 0.0) || u >= 1.0) {
    throw DomainError("quantile argument must lie in [0, 1), got " + std::to_string(u));
  }
  const double cont = 1.0 - eq.a;
  if (u >= cont) return Realization::atom_one();
  if (u <= 0.0) return Realization::continuous(0.0);
  const int n = eq.config.n;
  double x = eq.s * pow_conv(u / cont, static_cast<double>(n - 1), n);
  // libm slop must not turn a continuous draw into the tagged atom
  if (x >= 1.0) x = std::nextafter(1.0, 0.0);
  return Realization::continuous(x);
}

std::vector<SweepRow> sweep_serial(double mu, int n_min, int n_max) {
  if (n_min < 2) throw NOutOfRange(n_min);
  if (n_max < n_min) {
    throw DomainError("sweep range is empty: n_min " + std::to_string(n_min) + " > n_max " +
                      std::to_string(n_max));
  }
  if (!(mu > 0.0) || !(mu < 1.0)) throw MuOutOfRange(mu);
  std::vector<SweepRow> rows(static_cast<std::size_t>(n_max - n_min + 1));
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    rows[static_cast<std::size_t>(i)] = row_for(n_min + i, mu);
  }
  return rows;
}

std::vector<SweepRow> sweep(double mu, int n_min, int n_max) {
  if (n_min < 2) throw NOutOfRange(n_min);
  if (n_max < n_min) {
    throw DomainError("sweep range is empty: n_min " + std::to_string(n_min) + " > n_max " +
                      std::to_string(n_max));
  }
  if (!(mu > 0.0) || !(mu < 1.0)) throw MuOutOfRange(mu);
  const int count = n_max - n_min + 1;
  std::vector<SweepRow> rows(static_cast<std::size_t>(count));
  bool failed = false;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = row_for(n_min + i, mu);
    } catch (...) {
      failed = true; // exceptions must not escape the worker region
    }
  }
  if (failed) throw ConvergenceFailure("sweep failed to solve at least one instance");
  return rows;
}

}  // namespace maxgame
