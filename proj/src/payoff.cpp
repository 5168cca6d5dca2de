#include "maxgame/payoff.hpp"

#include <cmath>
#include <utility>

namespace maxgame {

namespace {

constexpr int kExactBinomMax = 56; // C(56, 28) still fits a double exactly

// Pascal-triangle table; additions of integer-valued doubles stay exact
// up to row kExactBinomMax.
double binom_exact(int n, int k) {
  static const auto table = [] {
    std::vector<std::vector<double>> rows(kExactBinomMax + 1);
    for (int i = 0; i <= kExactBinomMax; ++i) {
      rows[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1.0);
      for (int j = 1; j < i; ++j) {
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            rows[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
            rows[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
      }
    }
    return rows;
  }();
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// C(r, i) * p^i * q^(r-i), usable for any r; zero bases short-circuit so
// the log-domain branch never sees log(0).
double binom_term(int r, int i, double p, double q) {
  if (p == 0.0 && i > 0) return 0.0;
  if (q == 0.0 && i < r) return 0.0;
  if (r <= kExactBinomMax) {
    return binom_exact(r, i) * std::pow(p, static_cast<double>(i)) *
           std::pow(q, static_cast<double>(r - i));
  }
  double lg = log_binom(r, i);
  if (i > 0) lg += i * std::log(p);
  if (i < r) lg += (r - i) * std::log(q);
  return std::exp(lg);
}

void check_tie_args(double a, int n) {
  if (n < 2) throw DomainError("tie value needs at least 2 players");
  if (!(a > 0.0)) throw DomainError("atom weight must be strictly positive");
  if (a > 1.0) throw DomainError("atom weight cannot exceed 1");
}

}  // namespace

double tie_split_closed(double a, int n) {
  check_tie_args(a, n);
  // (1 - (1-a)^n) / (n*a); expm1/log1p keeps small a accurate, and a = 1
  // falls through to 1/n via log1p(-1) = -inf.
  const double one_minus_pow = -std::expm1(n * std::log1p(-a));
  return one_minus_pow / (n * a);
}

double tie_split_sum(double a, int n) {
  check_tie_args(a, n);
  const int r = n - 1;
  const double q = 1.0 - a; // rivals strictly below the top
  double total = 0.0;
  for (int i = 0; i <= r; ++i) {
    total += binom_term(r, i, q, a) / static_cast<double>(n - i);
  }
  return total;
}

double tie_share_value(double p, double q, int n) {
  if (n < 2) throw DomainError("tie value needs at least 2 players");
  if (p < 0.0 || q < 0.0 || p + q > 1.0 + 1e-12) {
    throw DomainError("tie probabilities must be nonnegative with p + q <= 1");
  }
  const int r = n - 1;
  double total = 0.0;
  for (int i = 0; i <= r; ++i) {
    total += binom_term(r, i, p, q) / static_cast<double>(i + 1);
  }
  return total;
}

WinCurve WinCurve::vs_equilibrium(const EquilibriumStrategy& eq) {
  WinCurve curve;
  curve.n_ = eq.config.n;
  curve.closed_form_ = true;
  curve.a_ = eq.a;
  curve.s_ = eq.s;
  curve.plateau_ = std::pow(1.0 - eq.a, static_cast<double>(eq.config.n - 1));
  curve.atom_value_ = eq.a > 0.0 ? tie_split_closed(eq.a, eq.config.n) : 1.0;
  curve.breakpoints_ = {0.0, eq.s, 1.0};
  if (eq.a > 0.0) curve.atoms_ = {1.0};
  return curve;
}

WinCurve WinCurve::vs_discrete(const DiscreteDistribution& profile, int n) {
  if (n < 2) throw NOutOfRange(n);
  WinCurve curve;
  curve.n_ = n;
  curve.closed_form_ = false;
  curve.atom_value_ = tie_share_value(profile.weight_at(1.0), profile.mass_below(1.0), n);
  curve.breakpoints_ = {0.0, 1.0};
  curve.atoms_.reserve(profile.size());
  for (const auto& pt : profile.points()) curve.atoms_.push_back(pt.x);
  curve.profile_.emplace(profile);
  return curve;
}

double WinCurve::at(double x) const {
  if (!(x >= 0.0) || x > 1.0) {
    throw DomainError("win curve argument must lie in [0, 1], got " + std::to_string(x));
  }
  if (x == 1.0) return atom_value_;
  if (closed_form_) {
    // an atom at x < 1 ties equilibrium rivals with probability zero
    if (x >= s_) return plateau_;
    return plateau_ * x / s_;
  }
  const double p = profile_->weight_at(x);
  const double q = profile_->mass_below(x);
  if (p > 0.0) return tie_share_value(p, q, n_);
  return std::pow(q, static_cast<double>(n_ - 1));
}

double WinCurve::at(const Realization& r) const {
  return r.is_atom_one() ? atom_value_ : at(r.value());
}

double deviation_payoff(const DiscreteDistribution& dev, const WinCurve& curve) {
  double total = 0.0;
  for (const auto& pt : dev.points()) total += pt.p * curve.at(pt.x);
  return total;
}

}  // namespace maxgame
