#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "regretlab/grid.hpp"
#include "regretlab/types.hpp"

namespace regretlab::kernels {

// Worker cap: REGRETLAB_THREADS when set, otherwise the OpenMP default.
// Read once per process.
int thread_cap();

// All parallel reductions below follow one scheme: the index space is cut
// into fixed 4096-element blocks, each block is reduced sequentially, and
// the block partials are combined in index order. Results therefore do not
// depend on the thread count, only serial-vs-blocked summation order
// differs (within ~1e-12 relative).
inline constexpr std::size_t kBlock = 4096;

// ---- serial reference implementations (kept for tests and the benchmark) ----

double logsumexp_serial(std::span<const double> v);
double posterior_step_serial(std::span<double> log_weights, const ParamGrid& grid,
                             const LabeledExample& ex);
double mixture_log_predict_serial(std::span<const double> log_weights,
                                  const ParamGrid& grid, std::span<const double> x,
                                  int label, double* p_min = nullptr,
                                  double* p_max = nullptr);
std::size_t best_log_likelihood_index_serial(const ParamGrid& grid,
                                             std::span<const LabeledExample> seq);

// ---- deterministic blocked / OpenMP versions (production path) ----

double logsumexp(std::span<const double> v);

// log_weights[i] += log p(y | x, psi_i), then renormalize. Returns the
// logsumexp of the pre-normalization vector, which equals the log predicted
// probability of the observed label when the input weights were normalized.
double posterior_step(std::span<double> log_weights, const ParamGrid& grid,
                      const LabeledExample& ex);

// logsumexp over i of log_weights[i] + log p(label | x, psi_i). Optionally
// reports the smallest/largest per-point probability seen.
double mixture_log_predict(std::span<const double> log_weights, const ParamGrid& grid,
                           std::span<const double> x, int label,
                           double* p_min = nullptr, double* p_max = nullptr);

// Index of the grid point with the largest sequence log-likelihood; exact
// ties resolve to the lowest index regardless of scheduling.
std::size_t best_log_likelihood_index(const ParamGrid& grid,
                                      std::span<const LabeledExample> seq);

// Per-point sequence log-likelihoods (parallel over points).
std::vector<double> sequence_log_likelihoods(const ParamGrid& grid,
                                             std::span<const LabeledExample> seq);

}  // namespace regretlab::kernels
