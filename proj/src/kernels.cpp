#include "regretlab/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "regretlab/logistic.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace regretlab::kernels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::int64_t block_count(std::size_t n) {
  return static_cast<std::int64_t>((n + kBlock - 1) / kBlock);
}

void require_aligned(std::size_t weights, const ParamGrid& grid) {
  if (weights != grid.size()) {
    throw std::invalid_argument("log-weight vector has " + std::to_string(weights) +
                                " entries for a grid of " + std::to_string(grid.size()));
  }
}

void require_dim(const ParamGrid& grid, std::size_t xdim) {
  if (static_cast<std::size_t>(grid.dim()) != xdim) {
    throw std::invalid_argument("feature vector has " + std::to_string(xdim) +
                                " entries for a grid of dimension " +
                                std::to_string(grid.dim()));
  }
}

inline double point_dot(const double* pts, std::size_t i, int d, const double* x) {
  const double* p = pts + i * static_cast<std::size_t>(d);
  double z = 0.0;
  for (int j = 0; j < d; ++j) z += p[j] * x[j];
  return z;
}

}  // namespace

int thread_cap() {
  static const int env_cap = [] {
    if (const char* env = std::getenv("REGRETLAB_THREADS")) {
      char* end = nullptr;
      long n = std::strtol(env, &end, 10);
      if (end != env && n >= 1) return static_cast<int>(n);
    }
    return 0;
  }();
  if (env_cap >= 1) return env_cap;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// ---- serial reference versions ----

double logsumexp_serial(std::span<const double> v) {
  if (v.empty()) return kNegInf;
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

double posterior_step_serial(std::span<double> log_weights, const ParamGrid& grid,
                             const LabeledExample& ex) {
  require_aligned(log_weights.size(), grid);
  require_dim(grid, ex.features.size());
  const double* pts = grid.coords().data();
  const double* x = ex.features.data();
  const int d = grid.dim();
  const double y = ex.label;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    log_weights[i] += log_sigmoid(y * point_dot(pts, i, d, x));
  }
  double lse = logsumexp_serial(log_weights);
  for (double& w : log_weights) w -= lse;
  return lse;
}

double mixture_log_predict_serial(std::span<const double> log_weights,
                                  const ParamGrid& grid, std::span<const double> x,
                                  int label, double* p_min, double* p_max) {
  require_aligned(log_weights.size(), grid);
  require_dim(grid, x.size());
  const double* pts = grid.coords().data();
  const int d = grid.dim();
  double m = kNegInf, lo = 1.0, hi = 0.0;
  std::vector<double> v(log_weights.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double z = label * point_dot(pts, i, d, x.data());
    v[i] = log_weights[i] + log_sigmoid(z);
    m = std::max(m, v[i]);
    double p = sigmoid(z);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  if (p_min) *p_min = lo;
  if (p_max) *p_max = hi;
  double s = 0.0;
  for (double t : v) s += std::exp(t - m);
  return m + std::log(s);
}

std::size_t best_log_likelihood_index_serial(const ParamGrid& grid,
                                             std::span<const LabeledExample> seq) {
  std::size_t best = 0;
  double best_ll = kNegInf;
  const double* pts = grid.coords().data();
  const int d = grid.dim();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double ll = 0.0;
    for (const auto& ex : seq) {
      ll += log_sigmoid(ex.label * point_dot(pts, i, d, ex.features.data()));
    }
    if (i == 0 || ll > best_ll) {
      best = i;
      best_ll = ll;
    }
  }
  return best;
}

// ---- deterministic blocked versions ----

double logsumexp(std::span<const double> v) {
  if (v.empty()) return kNegInf;
  const std::int64_t nb = block_count(v.size());
  const std::int64_t n = static_cast<std::int64_t>(v.size());
  std::vector<double> part(static_cast<std::size_t>(nb));

#pragma omp parallel for num_threads(thread_cap()) schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * static_cast<std::int64_t>(kBlock);
    const std::int64_t hi = std::min(n, lo + static_cast<std::int64_t>(kBlock));
    double m = kNegInf;
    for (std::int64_t i = lo; i < hi; ++i) m = std::max(m, v[i]);
    part[b] = m;
  }
  double m = kNegInf;
  for (double x : part) m = std::max(m, x);
  if (!std::isfinite(m)) return m;

#pragma omp parallel for num_threads(thread_cap()) schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * static_cast<std::int64_t>(kBlock);
    const std::int64_t hi = std::min(n, lo + static_cast<std::int64_t>(kBlock));
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += std::exp(v[i] - m);
    part[b] = s;
  }
  double s = 0.0;
  for (double x : part) s += x;
  return m + std::log(s);
}

double posterior_step(std::span<double> log_weights, const ParamGrid& grid,
                      const LabeledExample& ex) {
  require_aligned(log_weights.size(), grid);
  require_dim(grid, ex.features.size());
  const double* pts = grid.coords().data();
  const double* x = ex.features.data();
  const int d = grid.dim();
  const double y = ex.label;
  const std::int64_t n = static_cast<std::int64_t>(log_weights.size());
  const std::int64_t nb = block_count(log_weights.size());
  std::vector<double> part(static_cast<std::size_t>(nb));

#pragma omp parallel for num_threads(thread_cap()) schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * static_cast<std::int64_t>(kBlock);
    const std::int64_t hi = std::min(n, lo + static_cast<std::int64_t>(kBlock));
    double m = kNegInf;
    for (std::int64_t i = lo; i < hi; ++i) {
      log_weights[i] += log_sigmoid(y * point_dot(pts, static_cast<std::size_t>(i), d, x));
      m = std::max(m, log_weights[i]);
    }
    part[b] = m;
  }
  double m = kNegInf;
  for (double v : part) m = std::max(m, v);

#pragma omp parallel for num_threads(thread_cap()) schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * static_cast<std::int64_t>(kBlock);
    const std::int64_t hi = std::min(n, lo + static_cast<std::int64_t>(kBlock));
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += std::exp(log_weights[i] - m);
    part[b] = s;
  }
  double s = 0.0;
  for (double v : part) s += v;
  const double lse = m + std::log(s);

#pragma omp parallel for num_threads(thread_cap()) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) log_weights[i] -= lse;
  return lse;
}

double mixture_log_predict(std::span<const double> log_weights, const ParamGrid& grid,
                           std::span<const double> x, int label, double* p_min,
                           double* p_max) {
  require_aligned(log_weights.size(), grid);
  require_dim(grid, x.size());
  const double* pts = grid.coords().data();
  const double* xd = x.data();
  const int d = grid.dim();
  const std::int64_t n = static_cast<std::int64_t>(log_weights.size());
  const std::int64_t nb = block_count(log_weights.size());
  std::vector<double> v(log_weights.size());
  std::vector<double> pmax(static_cast<std::size_t>(nb)), plo(static_cast<std::size_t>(nb)),
      phi(static_cast<std::size_t>(nb));

#pragma omp parallel for num_threads(thread_cap()) schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * static_cast<std::int64_t>(kBlock);
    const std::int64_t hi = std::min(n, lo + static_cast<std::int64_t>(kBlock));
    double m = kNegInf, pl = 1.0, ph = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) {
      double z = label * point_dot(pts, static_cast<std::size_t>(i), d, xd);
      v[i] = log_weights[i] + log_sigmoid(z);
      m = std::max(m, v[i]);
      double p = sigmoid(z);
      pl = std::min(pl, p);
      ph = std::max(ph, p);
    }
    pmax[b] = m;
    plo[b] = pl;
    phi[b] = ph;
  }
  double m = kNegInf, pl = 1.0, ph = 0.0;
  for (std::int64_t b = 0; b < nb; ++b) {
    m = std::max(m, pmax[b]);
    pl = std::min(pl, plo[b]);
    ph = std::max(ph, phi[b]);
  }
  if (p_min) *p_min = pl;
  if (p_max) *p_max = ph;

#pragma omp parallel for num_threads(thread_cap()) schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * static_cast<std::int64_t>(kBlock);
    const std::int64_t hi = std::min(n, lo + static_cast<std::int64_t>(kBlock));
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += std::exp(v[i] - m);
    pmax[b] = s;
  }
  double s = 0.0;
  for (std::int64_t b = 0; b < nb; ++b) s += pmax[b];
  return m + std::log(s);
}

std::vector<double> sequence_log_likelihoods(const ParamGrid& grid,
                                             std::span<const LabeledExample> seq) {
  for (const auto& ex : seq) require_dim(grid, ex.features.size());
  const double* pts = grid.coords().data();
  const int d = grid.dim();
  const std::int64_t n = static_cast<std::int64_t>(grid.size());
  std::vector<double> ll(grid.size(), 0.0);

#pragma omp parallel for num_threads(thread_cap()) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (const auto& ex : seq) {
      acc += log_sigmoid(ex.label * point_dot(pts, static_cast<std::size_t>(i), d,
                                              ex.features.data()));
    }
    ll[i] = acc;
  }
  return ll;
}

std::size_t best_log_likelihood_index(const ParamGrid& grid,
                                      std::span<const LabeledExample> seq) {
  std::vector<double> ll = sequence_log_likelihoods(grid, seq);
  // Exact comparisons, lowest index on ties; combining per-block winners in
  // index order gives the same answer as a sequential scan.
  const std::int64_t n = static_cast<std::int64_t>(ll.size());
  const std::int64_t nb = block_count(ll.size());
  std::vector<double> bval(static_cast<std::size_t>(nb));
  std::vector<std::int64_t> bidx(static_cast<std::size_t>(nb));

#pragma omp parallel for num_threads(thread_cap()) schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * static_cast<std::int64_t>(kBlock);
    const std::int64_t hi = std::min(n, lo + static_cast<std::int64_t>(kBlock));
    std::int64_t best = lo;
    for (std::int64_t i = lo + 1; i < hi; ++i) {
      if (ll[i] > ll[best]) best = i;
    }
    bval[b] = ll[best];
    bidx[b] = best;
  }
  std::int64_t best = bidx[0];
  double best_v = bval[0];
  for (std::int64_t b = 1; b < nb; ++b) {
    if (bval[b] > best_v) {
      best_v = bval[b];
      best = bidx[b];
    }
  }
  return static_cast<std::size_t>(best);
}

}  // namespace regretlab::kernels
