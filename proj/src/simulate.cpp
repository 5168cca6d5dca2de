#include "maxgame/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maxgame {

namespace rng {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t substream_key(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream * kGolden + 0x2545f4914f6cdd1dULL));
}

std::uint64_t word_at(std::uint64_t key, std::uint64_t counter) {
  return mix64(key + counter * kGolden);
}

double uniform01(std::uint64_t key, std::uint64_t counter) {
  return static_cast<double>(word_at(key, counter) >> 11) * 0x1.0p-53;
}

}  // namespace rng

Realization sample_strategy(const Strategy& strategy, double u) {
  if (const auto* eq = std::get_if<EquilibriumStrategy>(&strategy)) {
    return quantile(*eq, u);
  }
  return std::get<DiscreteDistribution>(strategy).sample(u);
}

namespace {

// Fixed block size: the fold over block partials happens in block order,
// so the floating-point sums are independent of how blocks are scheduled
// across threads.
constexpr long long kBlockTrials = 8192;

struct BlockAccum {
  std::vector<long long> wins;
  std::vector<long long> atom_draws;
  std::vector<double> sum_x;
  long long ties = 0;
  long long full_ties = 0;

  explicit BlockAccum(std::size_t n) : wins(n, 0), atom_draws(n, 0), sum_x(n, 0.0) {}
};

void simulate_block(const std::vector<Strategy>& strategies, const std::vector<std::uint64_t>& keys,
                    std::uint64_t tie_key, long long first, long long last, BlockAccum& acc) {
  const int n = static_cast<int>(strategies.size());
  std::vector<int> tied;
  tied.reserve(static_cast<std::size_t>(n));
  for (long long t = first; t < last; ++t) {
    tied.clear();
    Realization best = Realization::continuous(0.0);
    for (int p = 0; p < n; ++p) {
      const double u = rng::uniform01(keys[static_cast<std::size_t>(p)],
                                      static_cast<std::uint64_t>(t));
      const Realization draw = sample_strategy(strategies[static_cast<std::size_t>(p)], u);
      acc.sum_x[static_cast<std::size_t>(p)] += draw.value();
      if (draw.is_atom_one()) ++acc.atom_draws[static_cast<std::size_t>(p)];
      if (p == 0 || draw > best) {
        best = draw;
        tied.clear();
        tied.push_back(p);
      } else if (draw == best) {
        tied.push_back(p);
      }
    }
    int winner = tied.front();
    if (tied.size() > 1) {
      // one uniform pick over the k tied players
      const double u = rng::uniform01(tie_key, static_cast<std::uint64_t>(t));
      int pick = static_cast<int>(u * static_cast<double>(tied.size()));
      if (pick >= static_cast<int>(tied.size())) pick = static_cast<int>(tied.size()) - 1;
      winner = tied[static_cast<std::size_t>(pick)];
      ++acc.ties;
      if (tied.size() == strategies.size()) ++acc.full_ties;
    }
    ++acc.wins[static_cast<std::size_t>(winner)];
  }
}

SimulationReport tournament_impl(const std::vector<Strategy>& strategies, long long trials,
                                 std::uint64_t seed, bool parallel) {
  const std::size_t n = strategies.size();
  if (n < 2) throw NOutOfRange(static_cast<int>(n));
  if (trials < 1) throw DomainError("tournament needs at least one trial");

  std::vector<std::uint64_t> keys(n);
  for (std::size_t p = 0; p < n; ++p) keys[p] = rng::substream_key(seed, p);
  const std::uint64_t tie_key = rng::substream_key(seed, n);

  const long long blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<BlockAccum> partials(static_cast<std::size_t>(blocks), BlockAccum(n));

#pragma omp parallel for schedule(static) if (parallel)
  for (long long b = 0; b < blocks; ++b) {
    const long long first = b * kBlockTrials;
    const long long last = std::min(first + kBlockTrials, trials);
    simulate_block(strategies, keys, tie_key, first, last, partials[static_cast<std::size_t>(b)]);
  }

  SimulationReport report;
  report.trials = trials;
  report.seed = seed;
  report.wins.assign(n, 0);
  report.atom_draws.assign(n, 0);
  std::vector<double> sums(n, 0.0);
  for (const BlockAccum& acc : partials) {
    for (std::size_t p = 0; p < n; ++p) {
      report.wins[p] += acc.wins[p];
      report.atom_draws[p] += acc.atom_draws[p];
      sums[p] += acc.sum_x[p];
    }
    report.tie_events += acc.ties;
    report.full_tie_events += acc.full_ties;
  }
  report.empirical_means.resize(n);
  report.win_freq.resize(n);
  report.ci_radius.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    report.empirical_means[p] = sums[p] / static_cast<double>(trials);
    const double freq = static_cast<double>(report.wins[p]) / static_cast<double>(trials);
    report.win_freq[p] = freq;
    report.ci_radius[p] = 3.0 * std::sqrt(freq * (1.0 - freq) / static_cast<double>(trials));
  }
  return report;
}

}  // namespace

SimulationReport run_tournament(const std::vector<Strategy>& strategies, long long trials,
                                std::uint64_t seed) {
  return tournament_impl(strategies, trials, seed, true);
}

SimulationReport run_tournament_serial(const std::vector<Strategy>& strategies, long long trials,
                                       std::uint64_t seed) {
  return tournament_impl(strategies, trials, seed, false);
}

double empirical_mean_check(const EquilibriumStrategy& eq, long long trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("mean check needs at least one trial");
  const std::uint64_t key = rng::substream_key(seed, 0);
  double sum = 0.0;
  for (long long t = 0; t < trials; ++t) {
    sum += quantile(eq, rng::uniform01(key, static_cast<std::uint64_t>(t))).value();
  }
  return sum / static_cast<double>(trials);
}

double empirical_deviation_payoff(const DiscreteDistribution& dev, const GameConfig& cfg,
                                  long long trials, std::uint64_t seed) {
  dev.require_mean(cfg.mu);
  const EquilibriumStrategy eq = solve(cfg);
  std::vector<Strategy> strategies;
  strategies.reserve(static_cast<std::size_t>(cfg.n));
  strategies.emplace_back(dev);
  for (int p = 1; p < cfg.n; ++p) strategies.emplace_back(eq);
  return run_tournament(strategies, trials, seed).win_freq[0];
}

int configured_threads() {
  const char* raw = std::getenv("MAXGAME_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 0) return 0;
  return static_cast<int>(value);
}

void apply_thread_cap() {
#ifdef _OPENMP
  const int cap = configured_threads();
  if (cap > 0) omp_set_num_threads(cap);
#endif
}

}  // namespace maxgame
