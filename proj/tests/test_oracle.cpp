#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "maxgame/core_types.hpp"
#include "maxgame/equilibrium.hpp"
#include "maxgame/oracle.hpp"
#include "maxgame/payoff.hpp"

using namespace maxgame;

namespace {

void check_report_invariants(const BestResponseReport& report, const WinCurve& curve, double mu,
                             int m) {
  CHECK(report.deviation.size() <= 2); // one mean constraint + normalization
  CHECK(std::abs(report.deviation.mean() - mu) <= 1e-12);
  CHECK(std::abs(report.value - deviation_payoff(report.deviation, curve)) <= 1e-12);
  const auto grid = response_grid(curve, mu, m);
  for (const auto& pt : report.deviation.points()) {
    CHECK(std::binary_search(grid.begin(), grid.end(), pt.x));
  }
}

}  // namespace

TEST_CASE("envelope of collinear samples keeps only the chord") {
  const auto env = concave_envelope({{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}});
  REQUIRE(env.size() == 2);
  CHECK(env.front().x == 0.0);
  CHECK(env.back().x == 1.0);
  CHECK(envelope_value(env, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("envelope skips samples under the chord") {
  const auto env = concave_envelope({{0.0, 0.0}, {0.5, 0.1}, {1.0, 1.0}});
  REQUIRE(env.size() == 2);
  CHECK(env.front().x == 0.0);
  CHECK(env.back().x == 1.0);
  CHECK(envelope_value(env, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("envelope rejects degenerate and unsorted input") {
  CHECK_THROWS_AS(concave_envelope({}), InsufficientPoints);
  CHECK_THROWS_AS(concave_envelope({{0.5, 0.5}}), InsufficientPoints);
  CHECK_THROWS_AS(concave_envelope({{0.5, 0.5}, {0.5, 0.7}}), InsufficientPoints);
  CHECK_THROWS_AS(concave_envelope({{0.7, 0.5}, {0.3, 0.7}}), DomainError);
}

TEST_CASE("envelope dominates its samples and is concave") {
  std::mt19937 gen(61);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<EnvelopePoint> samples;
    for (int i = 0; i < 500; ++i) samples.push_back({unit(gen), unit(gen)});
    std::sort(samples.begin(), samples.end(),
              [](const EnvelopePoint& a, const EnvelopePoint& b) { return a.x < b.x; });
    const auto env = concave_envelope(samples);
    for (const auto& pt : samples) {
      CHECK(envelope_value(env, pt.x) >= pt.w - 1e-12);
    }
    for (std::size_t i = 0; i + 2 < env.size(); ++i) {
      const double slope1 = (env[i + 1].w - env[i].w) / (env[i + 1].x - env[i].x);
      const double slope2 = (env[i + 2].w - env[i + 1].w) / (env[i + 2].x - env[i + 1].x);
      CHECK(slope2 <= slope1 + 1e-14);
    }
    for (std::size_t i = 0; i + 1 < env.size(); ++i) {
      CHECK(env[i].x < env[i + 1].x);
    }
  }
}

TEST_CASE("equilibrium envelope value pins the game value") {
  // against the solved opponents the envelope at mu is the chord through
  // (0,0) and (1, 1/(n*mu)): exactly 1/n
  const auto eq = solve(GameConfig{2, 0.75});
  const auto curve = WinCurve::vs_equilibrium(eq);
  const auto grid = response_grid(curve, 0.75, 10000);
  const auto env = concave_envelope(sample_curve(curve, grid));
  CHECK(envelope_value(env, 0.75) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("best response against solved equilibria stays at the game value") {
  {
    const auto curve = WinCurve::vs_equilibrium(solve(GameConfig{3, 0.2}));
    const auto report = best_response(curve, 0.2, 10000);
    CHECK(report.value >= 1.0 / 3.0 - 1e-12);
    CHECK(report.value <= 1.0 / 3.0 + 1e-3);
    check_report_invariants(report, curve, 0.2, 10000);
  }
  {
    const auto curve = WinCurve::vs_equilibrium(solve(GameConfig{2, 0.3}));
    const auto report = best_response(curve, 0.3, 10000);
    CHECK(std::abs(report.value - 0.5) <= 1e-3);
    for (const auto& pt : report.deviation.points()) {
      CHECK(pt.x <= 0.6 + 1e-12); // support of the uniform equilibrium
    }
    check_report_invariants(report, curve, 0.3, 10000);
  }
}

TEST_CASE("best response exploits a point mass almost surely") {
  const DiscreteDistribution point_mass({{0.5, 1.0}});
  const auto curve = WinCurve::vs_discrete(point_mass, 2);
  const auto report = best_response(curve, 0.5, 10000);
  CHECK(report.value >= 0.99);
  check_report_invariants(report, curve, 0.5, 10000);
}

TEST_CASE("best response enforces the grid floor") {
  const auto curve = WinCurve::vs_equilibrium(solve(GameConfig{2, 0.5}));
  CHECK_THROWS_AS(best_response(curve, 0.5, 99), DomainError);
  CHECK_NOTHROW(best_response(curve, 0.5, 100));
}

TEST_CASE("verify_equilibrium accepts solved instances") {
  for (const auto& [n, mu] : std::vector<std::pair<int, double>>{{2, 0.75}, {5, 0.1}, {4, 0.6}}) {
    const auto result = verify_equilibrium(GameConfig{n, mu}, 10000, 1e-3);
    CHECK(result.ok);
    CHECK(result.report.margin <= 1e-3);
  }
}

TEST_CASE("a corrupted atom weight is caught with a visible margin") {
  // right mean, wrong fixed point: a = 1/2 instead of 2/3 forces s = 1
  EquilibriumStrategy candidate;
  candidate.config = GameConfig{2, 0.75};
  candidate.regime = Regime::Atom;
  candidate.a = 0.5;
  candidate.s = 1.0; // mean identity a + (1-a)s/n = 0.75 still holds
  candidate.exponent = 1.0;
  const auto curve = WinCurve::vs_equilibrium(candidate);
  const auto report = best_response(curve, 0.75, 10000);
  CHECK(report.margin > 0.01);
}

TEST_CASE("oracle margins shrink one-sidedly as the grid refines") {
  for (const auto& [n, mu] : std::vector<std::pair<int, double>>{{2, 0.75}, {3, 0.5}, {5, 0.3}}) {
    double prev = -1.0;
    for (int m : {1000, 2000, 4000, 8000}) {
      const auto result = verify_equilibrium(GameConfig{n, mu}, m, 1e-3);
      CHECK(result.report.value >= 1.0 / n - 1e-12);
      CHECK(result.report.margin <= 1e-3);
      const double clamped = std::max(result.report.margin, 0.0);
      if (prev >= 0.0) {
        // at least halve per doubling, with a floor at rounding noise
        CHECK(clamped <= std::max(prev / 2.0, 1e-12));
      }
      prev = clamped;
    }
  }
}

TEST_CASE("refuting the point mass at the mean") {
  const auto report =
      refute_profile(DiscreteDistribution({{0.5, 1.0}}), GameConfig{2, 0.5}, 10000);
  CHECK(report.margin >= 0.49);
  const auto curve = WinCurve::vs_discrete(DiscreteDistribution({{0.5, 1.0}}), 2);
  check_report_invariants(report, curve, 0.5, 10000);
}

TEST_CASE("refuting a symmetric two-point profile") {
  const DiscreteDistribution profile({{0.25, 0.5}, {0.75, 0.5}});
  const auto report = refute_profile(profile, GameConfig{2, 0.5}, 10000);
  CHECK(report.margin > 0.0);
  check_report_invariants(report, WinCurve::vs_discrete(profile, 2), 0.5, 10000);
}

TEST_CASE("refuting an interior-atom profile") {
  const DiscreteDistribution profile({{0.15, 0.5}, {0.45, 0.5}});
  const auto report = refute_profile(profile, GameConfig{3, 0.3}, 10000);
  CHECK(report.margin > 0.01);
}

TEST_CASE("refuting a shifted-support candidate") {
  const auto cand = make_shifted_candidate(GameConfig{3, 0.3}, 0.1);
  CHECK(cand.a == doctest::Approx(0.0));
  CHECK(cand.s == doctest::Approx(0.7).epsilon(1e-14)); // n*mu - (n-1)*t
  const auto report = refute_shifted(cand, 10000);
  CHECK(report.margin > 0.01);
}

TEST_CASE("the true equilibrium discretization survives refutation") {
  const auto eq = solve(GameConfig{2, 0.75});
  const auto self = discretize(eq, 10000);
  CHECK_THROWS_AS(refute_profile(self, GameConfig{2, 0.75}, 10000), NoDeviationFound);
}

TEST_CASE("refute rejects profiles with the wrong mean") {
  const DiscreteDistribution profile({{0.4, 1.0}});
  CHECK_THROWS_AS(refute_profile(profile, GameConfig{2, 0.5}, 10000), DomainError);
}

TEST_CASE("shifted candidates derive and validate the mean identity") {
  const GameConfig cfg{3, 0.3};
  const auto cand = make_shifted_candidate(cfg, 0.1);
  const double load = cand.s + (cfg.n - 1) * cand.t;
  CHECK(std::abs(cand.a * (cfg.n - load) - (cfg.n * cfg.mu - load)) <= 1e-12);

  // a high mean forces the cap s = 1 and a positive atom
  const GameConfig rich{3, 0.6};
  const auto capped = make_shifted_candidate(rich, 0.2);
  CHECK(capped.s == 1.0);
  CHECK(capped.a > 0.0);
  const double load2 = capped.s + (rich.n - 1) * capped.t;
  CHECK(std::abs(capped.a * (rich.n - load2) - (rich.n * rich.mu - load2)) <= 1e-12);

  CHECK_THROWS_AS(make_shifted_candidate(cfg, 0.0), DomainError);
  CHECK_THROWS_AS(make_shifted_candidate(cfg, 0.3), DomainError);
  CHECK_THROWS_AS(make_shifted_candidate(cfg, 0.1, 0.2, 0.7), DomainError); // breaks the identity
  CHECK_NOTHROW(make_shifted_candidate(cfg, 0.1, 0.0, 0.7));
}

TEST_CASE("discretization preserves the mean and the exact top atom") {
  for (const auto& [n, mu] : std::vector<std::pair<int, double>>{{2, 0.3}, {2, 0.75}, {3, 0.5},
                                                                 {6, 0.8}}) {
    const auto eq = solve(GameConfig{n, mu});
    const auto d = discretize(eq, 5000);
    CHECK(std::abs(d.mean() - mu) <= 1e-12);
    CHECK(d.weight_at(1.0) == eq.a);
    double total = 0.0;
    for (const auto& pt : d.points()) total += pt.p;
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("parallel curve sampling equals the serial reference bit for bit") {
  const auto eq = solve(GameConfig{2, 0.75});
  const auto profile = discretize(eq, 2000);
  const auto curve = WinCurve::vs_discrete(profile, 2);
  const auto grid = response_grid(curve, 0.75, 5000);
  const auto serial = sample_curve_serial(curve, grid);
  const auto parallel = sample_curve(curve, grid);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].x == parallel[i].x);
    CHECK(serial[i].w == parallel[i].w);
  }
}
