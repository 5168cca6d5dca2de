#pragma once

#include <vector>

#include "maxgame/core_types.hpp"

namespace maxgame {

enum class Regime { Interior, Atom };

const char* regime_name(Regime regime);

// Symmetric equilibrium strategy: weight a on the top point and the
// continuous part (1-a)*(x/s)^(1/(n-1)) on [0, s].
//
// Interior regime (n*mu <= 1): a = 0, s = n*mu.
// Atom regime (n*mu > 1):      a solves a = mu*(1-(1-a)^n), s = n*mu*(1-a)^(n-1).
struct EquilibriumStrategy {
  GameConfig config;
  Regime regime = Regime::Interior;
  double a = 0.0;        // point-mass weight at 1
  double s = 1.0;        // upper bound of the continuous support
  double exponent = 1.0; // 1/(n-1)
};

// Atom weight for the given instance. Returns exactly 0 when n*mu <= 1;
// otherwise the unique root of (1-b)/(1-b^n) = mu in b, reported as
// a = 1-b. Bisection on b: the map is strictly decreasing, positive at
// b = 0 and negative at b -> 1 (limit value 1/n) in the atom regime.
double solve_atom(const GameConfig& cfg);

EquilibriumStrategy solve(const GameConfig& cfg);

double cdf(const EquilibriumStrategy& eq, double x);       // x in [0, 1]
Realization quantile(const EquilibriumStrategy& eq, double u); // u in [0, 1)

struct SweepRow {
  int n = 0;
  double mu = 0.0;
  double a = 0.0;
  double s = 0.0;
  Regime regime = Regime::Interior;
};

// One row per n in [n_min, n_max]. The parallel variant solves rows
// concurrently; outputs are identical to the serial reference.
std::vector<SweepRow> sweep(double mu, int n_min, int n_max);
std::vector<SweepRow> sweep_serial(double mu, int n_min, int n_max);

}  // namespace maxgame
