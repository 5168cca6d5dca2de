// Timing harness for the two data-parallel kernels against their serial
// references: tournament blocks and win-curve grid sampling. The outputs
// must match bit for bit; the table reports the best-of-repeat times.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "maxgame/equilibrium.hpp"
#include "maxgame/json_io.hpp"
#include "maxgame/oracle.hpp"
#include "maxgame/payoff.hpp"
#include "maxgame/simulate.hpp"

namespace {

template <typename F>
double best_ms(int repeat, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

void print_row(const char* kernel, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-22s %10.2f %12.2f %8.2fx %10s\n", kernel, serial_ms, parallel_ms,
              serial_ms / parallel_ms, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  maxgame::apply_thread_cap();

  long long trials = 2000000;
  int grid = 200000;
  int points = 20000;
  int repeat = 3;

  CLI::App app{"maxgame kernel benchmark: serial reference vs OpenMP"};
  app.add_option("--trials", trials, "tournament trials");
  app.add_option("--grid", grid, "curve sampling grid size");
  app.add_option("--points", points, "discrete profile support size");
  app.add_option("--repeat", repeat, "timing repetitions (best kept)");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-22s %10s %12s %9s %10s\n", "kernel", "serial ms", "parallel ms", "speedup",
              "identical");

  {
    const auto eq = maxgame::solve(maxgame::GameConfig{3, 0.5});
    const std::vector<maxgame::Strategy> strategies(3, maxgame::Strategy{eq});
    maxgame::SimulationReport serial_report;
    maxgame::SimulationReport parallel_report;
    const double serial_ms = best_ms(
        repeat, [&] { serial_report = maxgame::run_tournament_serial(strategies, trials, 7); });
    const double parallel_ms =
        best_ms(repeat, [&] { parallel_report = maxgame::run_tournament(strategies, trials, 7); });
    print_row("tournament", serial_ms, parallel_ms, serial_report == parallel_report);
  }

  {
    const auto eq = maxgame::solve(maxgame::GameConfig{2, 0.75});
    const auto profile = maxgame::discretize(eq, points);
    const auto curve = maxgame::WinCurve::vs_discrete(profile, 2);
    const auto xs = maxgame::response_grid(curve, 0.75, grid);
    std::vector<maxgame::EnvelopePoint> serial_samples;
    std::vector<maxgame::EnvelopePoint> parallel_samples;
    const double serial_ms =
        best_ms(repeat, [&] { serial_samples = maxgame::sample_curve_serial(curve, xs); });
    const double parallel_ms =
        best_ms(repeat, [&] { parallel_samples = maxgame::sample_curve(curve, xs); });
    bool identical = serial_samples.size() == parallel_samples.size();
    for (std::size_t i = 0; identical && i < serial_samples.size(); ++i) {
      identical = serial_samples[i].x == parallel_samples[i].x &&
                  serial_samples[i].w == parallel_samples[i].w;
    }
    print_row("curve sampling", serial_ms, parallel_ms, identical);
  }

  return 0;
}
