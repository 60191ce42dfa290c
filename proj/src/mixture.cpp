#include "regretlab/mixture.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "regretlab/kernels.hpp"
#include "regretlab/logistic.hpp"

namespace regretlab {

namespace {

void normalize(std::vector<double>& w) {
  const double lse = kernels::logsumexp(w);
  for (double& v : w) v -= lse;
}

}  // namespace

LogPosterior init_posterior(const ParamGrid& grid, const PriorSpec& prior) {
  LogPosterior post;
  post.log_weights.resize(grid.size());
  switch (prior.kind) {
    case PriorKind::uniform: {
      const double w = -std::log(static_cast<double>(grid.size()));
      std::fill(post.log_weights.begin(), post.log_weights.end(), w);
      break;
    }
    case PriorKind::quantized_gaussian: {
      if (!prior.gaussian_variance.has_value()) {
        throw std::invalid_argument("quantized_gaussian prior needs a variance");
      }
      const double nu_sq = *prior.gaussian_variance;
      if (!(nu_sq > 0.0) || !std::isfinite(nu_sq)) {
        throw std::invalid_argument("prior variance must be positive and finite");
      }
      for (std::size_t i = 0; i < grid.size(); ++i) {
        double sq = 0.0;
        for (double c : grid.point(i)) sq += c * c;
        post.log_weights[i] = -sq / (2.0 * nu_sq);
      }
      break;
    }
  }
  normalize(post.log_weights);
  return post;
}

LogPosterior posterior_update(const LogPosterior& posterior, const ParamGrid& grid,
                              const LabeledExample& ex) {
  LogPosterior next = posterior;
  kernels::posterior_step(next.log_weights, grid, ex);
  return next;
}

double mixture_predict(const LogPosterior& posterior, const ParamGrid& grid,
                       std::span<const double> x) {
  for (double xi : x) {
    if (!(std::fabs(xi) <= 1.0)) {
      throw std::invalid_argument("feature coordinate outside [-1, 1]");
    }
  }
  double p_lo = 0.0, p_hi = 1.0;
  const double log_p =
      kernels::mixture_log_predict(posterior.log_weights, grid, x, +1, &p_lo, &p_hi);
  double p = std::exp(log_p);
  // The exact mixture lies between the extreme per-point probabilities; the
  // clamp removes reduction rounding and keeps the output inside (0, 1).
  p = std::clamp(p, p_lo, p_hi);
  p = std::clamp(p, std::numeric_limits<double>::min(),
                 std::nextafter(1.0, 0.0));
  return p;
}

RunResult run_online(const ParamGrid& grid, const PriorSpec& prior,
                     std::span<const LabeledExample> seq, ParamVector comparator) {
  check_finite(comparator, "comparator");
  if (comparator.size() != static_cast<std::size_t>(grid.dim())) {
    throw std::invalid_argument("comparator dimension does not match the grid");
  }
  RunResult out;
  out.posterior = init_posterior(grid, prior);
  std::vector<double> alg_loss;
  alg_loss.reserve(seq.size());
  for (const auto& ex : seq) {
    // log predicted probability of the realized label under the current
    // posterior; the same pass performs the Bayes update.
    const double lse = kernels::posterior_step(out.posterior.log_weights, grid, ex);
    alg_loss.push_back(-lse);
  }
  out.trace = make_trace(std::move(alg_loss), std::move(comparator), seq);
  return out;
}

}  // namespace regretlab
