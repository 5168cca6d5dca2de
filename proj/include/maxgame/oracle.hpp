#pragma once

#include <vector>

#include "maxgame/core_types.hpp"
#include "maxgame/equilibrium.hpp"
#include "maxgame/payoff.hpp"

namespace maxgame {

inline constexpr int kDefaultGrid = 10000;
inline constexpr double kDefaultSlack = 1e-3;

struct EnvelopePoint {
  double x = 0.0;
  double w = 0.0;
};

// Least concave majorant of samples sorted by x: single-pass upper hull,
// O(m). Every sample lies on or below the returned vertex chain.
std::vector<EnvelopePoint> concave_envelope(const std::vector<EnvelopePoint>& samples);

double envelope_value(const std::vector<EnvelopePoint>& envelope, double x);

struct BestResponseReport {
  double value;      // best payoff over mean-mu deviations at grid resolution
  double margin;     // value - 1/n
  int grid_size;     // requested uniform resolution m
  DiscreteDistribution deviation; // <= 2 grid points achieving value
};

// Uniform m points on [0, 1] plus the curve breakpoints, mu, every rival
// atom, and atom +- h with h = 1/(10m): the profitable deviations against
// discrete profiles sit just above the atoms, so those neighbors must be
// on the grid.
std::vector<double> response_grid(const WinCurve& curve, double mu, int m);

std::vector<EnvelopePoint> sample_curve(const WinCurve& curve, const std::vector<double>& grid);
std::vector<EnvelopePoint> sample_curve_serial(const WinCurve& curve, const std::vector<double>& grid);

// Concavification at mu: the envelope value at mu is the best payoff any
// mean-mu distribution on the grid can reach; the optimum needs at most
// two support points (the vertices bracketing mu). The report's margin is
// re-verified through deviation_payoff before being returned.
BestResponseReport best_response(const WinCurve& curve, double mu, int m);

struct VerifyResult {
  bool ok;
  BestResponseReport report;
};

// Solve the instance and test its own curve: ok iff margin <= slack.
VerifyResult verify_equilibrium(const GameConfig& cfg, int m = kDefaultGrid,
                                double slack = kDefaultSlack);

// Grid best response against a symmetric discrete profile with mean mu.
// Returns the report when the margin clears the slack; otherwise throws
// NoDeviationFound (nothing beats the profile beyond grid resolution).
BestResponseReport refute_profile(const DiscreteDistribution& profile, const GameConfig& cfg,
                                  int m = kDefaultGrid, double slack = kDefaultSlack);

// Candidate with the equilibrium shape but continuous support on [t, s],
// t > 0: cdf (1-a)*((x-t)/(s-t))^(1/(n-1)) plus weight a at 1. Mean
// consistency ties the triple together:
//   a = (n*mu - [s + (n-1)t]) / (n - [s + (n-1)t]).
struct ShiftedCandidate {
  GameConfig config;
  double t = 0.0;
  double a = 0.0;
  double s = 1.0;
};

// Derive (a, s) from t alone: s = n*mu - (n-1)t when that stays within
// [0, 1] (then a = 0), else s = 1 with a from the mean identity.
ShiftedCandidate make_shifted_candidate(const GameConfig& cfg, double t);
// Validate a caller-supplied triple against the mean identity.
ShiftedCandidate make_shifted_candidate(const GameConfig& cfg, double t, double a, double s);

// Mass-preserving discretization: equal-width cells over the continuous
// support, each cell's weight placed at its conditional mean, plus the
// exact atom at 1. The result keeps the candidate's mean to rounding.
DiscreteDistribution discretize(const EquilibriumStrategy& eq, int cells = kDefaultGrid);
DiscreteDistribution discretize_shifted(const ShiftedCandidate& cand, int cells = kDefaultGrid);

BestResponseReport refute_shifted(const ShiftedCandidate& cand, int m = kDefaultGrid,
                                  double slack = kDefaultSlack);

}  // namespace maxgame
