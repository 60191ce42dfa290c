// Timing harness comparing the serial reference kernels against the blocked
// OpenMP versions. Not part of the test suite.

#include <chrono>
#include <cstdio>
#include <vector>

#include "regretlab/grid.hpp"
#include "regretlab/kernels.hpp"
#include "regretlab/mixture.hpp"
#include "regretlab/rng.hpp"

using namespace regretlab;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ParamGrid make_grid_of(std::size_t target, int d) {
  // shrink the spacing until the linf lattice reaches the target size
  double eps = 1.0;
  for (int i = 0; i < 60; ++i) {
    ParamGrid g = build_grid(d, {Norm::linf, 1.0}, eps, 1u << 30);
    if (g.size() >= target) return g;
    eps *= 0.7;
  }
  return build_grid(d, {Norm::linf, 1.0}, eps, 1u << 30);
}

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    f();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

}  // namespace

int main() {
  std::printf("thread cap: %d\n", kernels::thread_cap());
  std::printf("%10s %14s %14s %9s\n", "points", "serial ms", "blocked ms", "speedup");

  for (std::size_t target : {std::size_t{10'000}, std::size_t{100'000}, std::size_t{1'000'000}}) {
    ParamGrid grid = make_grid_of(target, 2);
    LabeledExample ex({0.37, -0.61}, 1);
    auto base = init_posterior(grid, PriorSpec::Uniform());

    std::vector<double> w_serial, w_blocked;
    const double serial_ms = best_of(3, [&] {
      w_serial = base.log_weights;
      kernels::posterior_step_serial(w_serial, grid, ex);
    });
    const double blocked_ms = best_of(3, [&] {
      w_blocked = base.log_weights;
      kernels::posterior_step(w_blocked, grid, ex);
    });

    double max_diff = 0.0;
    for (std::size_t i = 0; i < w_serial.size(); ++i) {
      max_diff = std::max(max_diff, std::abs(w_serial[i] - w_blocked[i]));
    }
    std::printf("%10zu %14.3f %14.3f %8.2fx   (max |serial-blocked| = %.2e)\n",
                grid.size(), serial_ms, blocked_ms, serial_ms / blocked_ms, max_diff);
  }

  // argmax kernel on a modest sequence
  {
    ParamGrid grid = make_grid_of(100'000, 2);
    Rng rng(7);
    std::vector<LabeledExample> seq;
    for (int t = 0; t < 64; ++t) {
      std::vector<double> x{2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0};
      seq.emplace_back(std::move(x), rng.next_unit() < 0.5 ? 1 : -1);
    }
    const double serial_ms =
        best_of(3, [&] { kernels::best_log_likelihood_index_serial(grid, seq); });
    const double blocked_ms =
        best_of(3, [&] { kernels::best_log_likelihood_index(grid, seq); });
    std::printf("argmax over %zu points x %zu rounds: serial %.3f ms, blocked %.3f ms "
                "(%.2fx)\n",
                grid.size(), seq.size(), serial_ms, blocked_ms, serial_ms / blocked_ms);
  }
  return 0;
}
