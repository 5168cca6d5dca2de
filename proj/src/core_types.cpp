#include "maxgame/core_types.hpp"

#include <algorithm>
#include <cmath>

namespace maxgame {

GameConfig validate_config(int n, double mu) {
  if (n < 2) throw NOutOfRange(n);
  if (!(mu > 0.0) || !(mu < 1.0)) throw MuOutOfRange(mu);
  return GameConfig{n, mu};
}

Realization Realization::continuous(double x) {
  if (!(x >= 0.0) || x >= 1.0) {
    throw DomainError("continuous realization must lie in [0, 1), got " + std::to_string(x));
  }
  return Realization(x, false);
}

Realization Realization::atom_one() { return Realization(1.0, true); }

DiscreteDistribution::DiscreteDistribution(std::vector<MassPoint> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("distribution needs at least one point");
  double total = 0.0;
  double prev_x = -1.0;
  for (const auto& pt : points_) {
    if (!(pt.x >= 0.0) || pt.x > 1.0) {
      throw DomainError("support point outside [0, 1]: " + std::to_string(pt.x));
    }
    if (pt.x <= prev_x) {
      throw DomainError("support points must be strictly increasing");
    }
    if (!(pt.p > 0.0)) {
      throw DomainError("point weights must be strictly positive");
    }
    prev_x = pt.x;
    total += pt.p;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > kProbSumTol) {
    throw DomainError("weights sum to " + std::to_string(total) + ", not 1");
  }
}

double DiscreteDistribution::mean() const {
  double m = 0.0;
  for (const auto& pt : points_) m += pt.x * pt.p;
  return m;
}

double DiscreteDistribution::weight_at(double x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x,
                             [](const MassPoint& pt, double v) { return pt.x < v; });
  if (it != points_.end() && it->x == x) return it->p;
  return 0.0;
}

double DiscreteDistribution::mass_below(double x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x,
                             [](const MassPoint& pt, double v) { return pt.x < v; });
  if (it == points_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - points_.begin()) - 1];
}

Realization DiscreteDistribution::sample(double u) const {
  if (!(u >= 0.0) || u >= 1.0) {
    throw DomainError("inverse-CDF argument must lie in [0, 1)");
  }
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
  if (idx >= points_.size()) idx = points_.size() - 1; // total may round just under 1
  const double x = points_[idx].x;
  return x == 1.0 ? Realization::atom_one() : Realization::continuous(x);
}

void DiscreteDistribution::require_mean(double mu) const {
  const double m = mean();
  if (std::abs(m - mu) > kMeanTol) {
    throw DomainError("distribution mean " + std::to_string(m) + " does not match required " +
                      std::to_string(mu));
  }
}

bool operator==(const DiscreteDistribution& lhs, const DiscreteDistribution& rhs) {
  if (lhs.points_.size() != rhs.points_.size()) return false;
  for (std::size_t i = 0; i < lhs.points_.size(); ++i) {
    if (lhs.points_[i].x != rhs.points_[i].x || lhs.points_[i].p != rhs.points_[i].p) return false;
  }
  return true;
}

double discrete_mean(const DiscreteDistribution& d) { return d.mean(); }

}  // namespace maxgame
