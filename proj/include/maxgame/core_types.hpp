#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxgame {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NOutOfRange : DomainError {
  explicit NOutOfRange(int n)
      : DomainError("player count must be at least 2, got " + std::to_string(n)) {}
};

struct MuOutOfRange : DomainError {
  explicit MuOutOfRange(double mu)
      : DomainError("mean must lie strictly inside (0, 1), got " + std::to_string(mu)) {}
};

struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientPoints : DomainError {
  using DomainError::DomainError;
};

struct NoDeviationFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One game instance: n players, each constrained to mean mu on [0, 1].
struct GameConfig {
  int n = 2;
  double mu = 0.5;
};

GameConfig validate_config(int n, double mu);

// A single sampled value. The point mass at 1 is a tag rather than the
// float 1.0, so a shared top draw is an exact tie instead of a
// floating-point coincidence.
class Realization {
 public:
  static Realization continuous(double x);
  static Realization atom_one();

  bool is_atom_one() const { return atom_; }
  double value() const { return atom_ ? 1.0 : x_; }

  friend bool operator==(const Realization& lhs, const Realization& rhs) {
    return lhs.atom_ == rhs.atom_ && (lhs.atom_ || lhs.x_ == rhs.x_);
  }

  // Total order: every continuous value sorts before the top atom.
  friend std::strong_ordering operator<=>(const Realization& lhs, const Realization& rhs) {
    if (lhs.atom_ != rhs.atom_) {
      return lhs.atom_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (lhs.atom_) return std::strong_ordering::equal;
    if (lhs.x_ < rhs.x_) return std::strong_ordering::less;
    if (lhs.x_ > rhs.x_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Realization(double x, bool atom) : x_(x), atom_(atom) {}
  double x_;
  bool atom_;
};

struct MassPoint {
  double x = 0.0;
  double p = 0.0;
};

// Finite distribution on [0, 1]: strictly increasing support, strictly
// positive weights, total weight 1 within kProbSumTol. Zero-weight points
// are rejected rather than dropped.
class DiscreteDistribution {
 public:
  static constexpr double kProbSumTol = 1e-12;
  static constexpr double kMeanTol = 1e-9;

  explicit DiscreteDistribution(std::vector<MassPoint> points);

  const std::vector<MassPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  double mean() const;
  double weight_at(double x) const;   // exact-match weight, 0 when absent
  double mass_below(double x) const;  // total weight strictly under x
  Realization sample(double u) const; // inverse-CDF draw, u in [0, 1)

  void require_mean(double mu) const; // throws DomainError beyond kMeanTol

  friend bool operator==(const DiscreteDistribution& lhs, const DiscreteDistribution& rhs);

 private:
  std::vector<MassPoint> points_;
  std::vector<double> cumulative_; // inclusive prefix sums
};

double discrete_mean(const DiscreteDistribution& d);

}  // namespace maxgame
