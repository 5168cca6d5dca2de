#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "maxgame/core_types.hpp"
#include "maxgame/equilibrium.hpp"
#include "maxgame/json_io.hpp"
#include "maxgame/payoff.hpp"
#include "maxgame/simulate.hpp"

using namespace maxgame;

namespace {

// E[X^2] = a + (1-a)s^2/(2n-1) for the equilibrium shape; used to budget
// the mean-check tolerances.
double equilibrium_stddev(const EquilibriumStrategy& eq) {
  const int n = eq.config.n;
  const double second = eq.a + (1.0 - eq.a) * eq.s * eq.s / (2.0 * n - 1.0);
  return std::sqrt(second - eq.config.mu * eq.config.mu);
}

struct ThreadGuard {
#ifdef _OPENMP
  int saved = omp_get_max_threads();
  ~ThreadGuard() { omp_set_num_threads(saved); }
#endif
};

}  // namespace

TEST_CASE("counter rng is deterministic, in range, and stream-separated") {
  const std::uint64_t key = rng::substream_key(42, 0);
  const std::uint64_t other = rng::substream_key(42, 1);
  CHECK(key != other);
  CHECK(rng::substream_key(43, 0) != key);
  for (std::uint64_t t = 0; t < 2000; ++t) {
    const double u = rng::uniform01(key, t);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == rng::uniform01(key, t));
  }
  // crude equidistribution sanity on 1e5 draws
  double sum = 0.0;
  for (std::uint64_t t = 0; t < 100000; ++t) sum += rng::uniform01(key, t);
  CHECK(std::abs(sum / 100000.0 - 0.5) < 0.005);
}

TEST_CASE("tournament validates its arguments") {
  const auto eq = solve(GameConfig{2, 0.5});
  CHECK_THROWS_AS(run_tournament({Strategy{eq}}, 100, 1), NOutOfRange);
  CHECK_THROWS_AS(run_tournament({Strategy{eq}, Strategy{eq}}, 0, 1), DomainError);
}

TEST_CASE("parallel tournament equals the serial reference bit for bit") {
  const auto eq = solve(GameConfig{3, 0.5});
  const std::vector<Strategy> strategies(3, Strategy{eq});
  const auto serial = run_tournament_serial(strategies, 200001, 99);
  const auto parallel = run_tournament(strategies, 200001, 99);
  CHECK(serial == parallel);
}

TEST_CASE("reports are identical at any thread count") {
#ifdef _OPENMP
  ThreadGuard guard;
  const auto eq = solve(GameConfig{2, 0.75});
  const std::vector<Strategy> strategies(2, Strategy{eq});
  omp_set_num_threads(1);
  const auto one = run_tournament(strategies, 150000, 7);
  omp_set_num_threads(3);
  const auto three = run_tournament(strategies, 150000, 7);
  omp_set_num_threads(8);
  const auto eight = run_tournament(strategies, 150000, 7);
  CHECK(one == three);
  CHECK(one == eight);
  CHECK(report_to_json(one).dump() == report_to_json(eight).dump());
#endif
}

TEST_CASE("symmetric equilibrium play wins evenly") {
  const auto eq = solve(GameConfig{3, 0.2});
  const std::vector<Strategy> strategies(3, Strategy{eq});
  const auto report = run_tournament(strategies, 1000000, 42);
  long long total = 0;
  for (int p = 0; p < 3; ++p) {
    CHECK(std::abs(report.win_freq[static_cast<std::size_t>(p)] - 1.0 / 3.0) <= 0.005);
    total += report.wins[static_cast<std::size_t>(p)];
  }
  CHECK(total == report.trials);
}

TEST_CASE("identical point masses tie on every trial") {
  const DiscreteDistribution half({{0.5, 1.0}});
  const std::vector<Strategy> strategies(2, Strategy{half});
  const auto report = run_tournament(strategies, 100000, 5);
  CHECK(report.tie_events == report.trials);
  CHECK(report.full_tie_events == report.trials);
  CHECK(std::abs(report.win_freq[0] - 0.5) <= 0.005);
  CHECK(std::abs(report.win_freq[1] - 0.5) <= 0.005);
  CHECK(report.empirical_means[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tie frequency tracks the squared atom weight") {
  const auto eq = solve(GameConfig{2, 0.75});
  const std::vector<Strategy> strategies(2, Strategy{eq});
  const auto report = run_tournament(strategies, 1000000, 7);
  // both players at the top atom with probability a^2 = 4/9
  const double a = eq.a;
  CHECK(std::abs(static_cast<double>(report.tie_events) / report.trials - a * a) <= 0.005);
}

TEST_CASE("per-player atom draws track the atom weight") {
  const auto eq = solve(GameConfig{3, 0.5});
  const std::vector<Strategy> strategies(3, Strategy{eq});
  const long long trials = 400000;
  const auto report = run_tournament(strategies, trials, 21);
  const double sigma = std::sqrt(eq.a * (1.0 - eq.a) / trials);
  for (int p = 0; p < 3; ++p) {
    const double freq =
        static_cast<double>(report.atom_draws[static_cast<std::size_t>(p)]) / trials;
    CHECK(std::abs(freq - eq.a) <= 3.0 * sigma + 1e-12);
  }
}

TEST_CASE("empirical means land on the constraint") {
  struct Case {
    int n;
    double mu;
  };
  for (const Case c : {Case{2, 0.3}, Case{2, 0.75}, Case{10, 0.9}}) {
    const auto eq = solve(GameConfig{c.n, c.mu});
    const long long trials = 1000000;
    const double mean = empirical_mean_check(eq, trials, 11);
    const double radius = 4.0 * equilibrium_stddev(eq) / std::sqrt(static_cast<double>(trials));
    CHECK(std::abs(mean - c.mu) <= radius);
  }
}

TEST_CASE("simulated deviation payoffs match the analytic engine") {
  struct Case {
    DiscreteDistribution dev;
    GameConfig cfg;
  };
  const std::vector<Case> cases = {
      {DiscreteDistribution({{0.0, 0.7}, {1.0, 0.3}}), GameConfig{2, 0.3}},
      {DiscreteDistribution({{0.0, 0.25}, {1.0, 0.75}}), GameConfig{2, 0.75}},
      {DiscreteDistribution({{0.2, 1.0}}), GameConfig{3, 0.2}},
  };
  const long long trials = 1000000;
  for (const auto& c : cases) {
    const auto eq = solve(c.cfg);
    const double analytic = deviation_payoff(c.dev, WinCurve::vs_equilibrium(eq));
    const double estimate = empirical_deviation_payoff(c.dev, c.cfg, trials, 13);
    const double sigma = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(trials));
    CHECK(std::abs(estimate - analytic) <= 4.0 * sigma);
  }
}

TEST_CASE("deviation simulation insists on the instance mean") {
  const DiscreteDistribution wrong({{0.4, 1.0}});
  CHECK_THROWS_AS(empirical_deviation_payoff(wrong, GameConfig{2, 0.5}, 1000, 3), DomainError);
}

TEST_CASE("win frequencies sit inside their confidence radii across seeds") {
  const auto eq = solve(GameConfig{3, 0.5});
  const std::vector<Strategy> strategies(3, Strategy{eq});
  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto report = run_tournament(strategies, 20000, seed);
    bool all_inside = true;
    for (int p = 0; p < 3; ++p) {
      const std::size_t idx = static_cast<std::size_t>(p);
      if (std::abs(report.win_freq[idx] - 1.0 / 3.0) > report.ci_radius[idx]) all_inside = false;
    }
    if (all_inside) ++covered;
  }
  CHECK(covered >= 99); // 3-sigma radii leave about 1 designed exception
}

TEST_CASE("player substreams are keyed by slot") {
  // slot-0 draws depend only on (seed, slot, strategy), not on the rivals
  const auto eq = solve(GameConfig{2, 0.75});
  const DiscreteDistribution devA({{0.0, 0.25}, {1.0, 0.75}});
  const DiscreteDistribution devB({{0.375, 0.5}, {1.0, 0.5}});
  const auto with_a = run_tournament({Strategy{eq}, Strategy{devA}}, 50000, 17);
  const auto with_b = run_tournament({Strategy{eq}, Strategy{devB}}, 50000, 17);
  CHECK(with_a.empirical_means[0] == with_b.empirical_means[0]);
  CHECK(with_a.atom_draws[0] == with_b.atom_draws[0]);
}

TEST_CASE("swapping players swaps the statistics within noise") {
  const auto eq = solve(GameConfig{2, 0.75});
  const DiscreteDistribution binary({{0.0, 0.25}, {1.0, 0.75}});
  const long long trials = 400000;
  const auto first = run_tournament({Strategy{binary}, Strategy{eq}}, trials, 29);
  const auto second = run_tournament({Strategy{eq}, Strategy{binary}}, trials, 29);
  const double radius = first.ci_radius[0] + second.ci_radius[1];
  CHECK(std::abs(first.win_freq[0] - second.win_freq[1]) <= radius);
  CHECK(std::abs(first.empirical_means[0] - second.empirical_means[1]) <= 0.01);
}

TEST_CASE("row-per-player CSV export") {
  const auto eq = solve(GameConfig{2, 0.5});
  const auto report = run_tournament({Strategy{eq}, Strategy{eq}}, 10000, 3);
  const std::string csv = report_to_csv(report);
  CHECK(csv.rfind("player,wins,win_freq,empirical_mean,atom_draws,ci_radius\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3); // header + one row per player
}

TEST_CASE("thread cap parsing ignores junk and negatives") {
  CHECK(configured_threads() >= 0); // whatever the environment says, no throw
}
