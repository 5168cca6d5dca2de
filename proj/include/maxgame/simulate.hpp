#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "maxgame/core_types.hpp"
#include "maxgame/equilibrium.hpp"

namespace maxgame {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so any partition of the trial range reproduces
// the serial draw sequence exactly. Player p uses stream p; the tie-break
// stream sits one past the last player.
namespace rng {

std::uint64_t mix64(std::uint64_t z);
std::uint64_t substream_key(std::uint64_t seed, std::uint64_t stream);
std::uint64_t word_at(std::uint64_t key, std::uint64_t counter);
double uniform01(std::uint64_t key, std::uint64_t counter); // in [0, 1)

}  // namespace rng

using Strategy = std::variant<EquilibriumStrategy, DiscreteDistribution>;

Realization sample_strategy(const Strategy& strategy, double u);

struct SimulationReport {
  long long trials = 0;
  std::uint64_t seed = 0;
  std::vector<long long> wins;        // sums to trials
  std::vector<long long> atom_draws;  // top-atom draws per player
  std::vector<double> empirical_means;
  std::vector<double> win_freq;
  std::vector<double> ci_radius;      // 3 * sqrt(p(1-p)/trials)
  long long tie_events = 0;           // trials with >= 2 players at the max
  long long full_tie_events = 0;      // trials with every player at the max

  friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

// Each trial draws one realization per player from its substream, takes
// the max under the Realization order, and breaks a k-way tie with a
// single uniform pick over the tied indices from the tie stream. Trials
// are accumulated in fixed-size blocks folded in block order, so the
// parallel variant is bit-identical to the serial reference at any thread
// count.
SimulationReport run_tournament(const std::vector<Strategy>& strategies, long long trials,
                                std::uint64_t seed);
SimulationReport run_tournament_serial(const std::vector<Strategy>& strategies, long long trials,
                                       std::uint64_t seed);

// Sample mean of `trials` equilibrium draws (stream 0).
double empirical_mean_check(const EquilibriumStrategy& eq, long long trials, std::uint64_t seed);

// Win frequency of the deviation played against n-1 equilibrium rivals.
// The deviation must match the instance mean.
double empirical_deviation_payoff(const DiscreteDistribution& dev, const GameConfig& cfg,
                                  long long trials, std::uint64_t seed);

// MAXGAME_THREADS cap; 0 or unset leaves the runtime default.
int configured_threads();
void apply_thread_cap();

}  // namespace maxgame
