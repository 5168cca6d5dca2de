#pragma once

#include <optional>
#include <vector>

#include "maxgame/core_types.hpp"
#include "maxgame/equilibrium.hpp"

namespace maxgame {

// Per-unit-mass value of sitting on the top point when each of the other
// n-1 players is there with weight a: (1 - (1-a)^n) / (n*a).
double tie_split_closed(double a, int n);

// Same quantity as the explicit binomial sum over the number i of rivals
// that fall strictly below the top; a tie among the remaining n-i players
// is worth 1/(n-i). Must agree with tie_split_closed to rounding.
double tie_split_sum(double a, int n);

// Fair-tie value of mass placed at a point where each rival independently
// ties with probability p and lands strictly below with probability q
// (mass above is allowed). Counting i tying rivals gives share 1/(i+1):
//   sum_i C(n-1,i) * p^i * q^(n-1-i) / (i+1).
// This is the same sum as tie_split_sum re-indexed from the complementary
// count; all terms are nonnegative, so it is safe for p = 0 or q = 0.
double tie_share_value(double p, double q, int n);

// Probability that a single placement at x beats the best of n-1 fixed
// rivals, with fair splitting at shared atoms. Nondecreasing, in [0, 1].
class WinCurve {
 public:
  // Closed form against equilibrium rivals:
  //   w(x) = (1-a)^(n-1) * x/s on [0, s], constant (1-a)^(n-1) on (s, 1),
  //   and the top point is worth tie_split_closed(a, n) (1 when a = 0).
  static WinCurve vs_equilibrium(const EquilibriumStrategy& eq);

  // Against n-1 independent copies of a discrete profile. Off-atom x wins
  // with the (n-1)-th power of the mass strictly below; at an atom the
  // fair-tie sum applies.
  static WinCurve vs_discrete(const DiscreteDistribution& profile, int n);

  // Win value of deviation mass at x in [0, 1]; x = 1 means the top point.
  double at(double x) const;
  double at(const Realization& r) const;
  double atom_value() const { return atom_value_; }

  int player_count() const { return n_; }
  bool closed_form() const { return closed_form_; }

  // x positions carrying rival point mass (candidate tie locations).
  const std::vector<double>& atom_positions() const { return atoms_; }
  // Structural x values a sampling grid must contain exactly.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  WinCurve() = default;

  int n_ = 2;
  bool closed_form_ = false;
  double a_ = 0.0;
  double s_ = 1.0;
  double plateau_ = 1.0; // (1-a)^(n-1)
  double atom_value_ = 1.0;
  std::optional<DiscreteDistribution> profile_;
  std::vector<double> atoms_;
  std::vector<double> breakpoints_;
};

// Expected win probability of a discrete deviation against the curve:
// sum_j p_j * w(x_j), where a point at exactly 1 uses the top-atom value.
// The deviation mean is not constrained here.
double deviation_payoff(const DiscreteDistribution& dev, const WinCurve& curve);

}  // namespace maxgame
