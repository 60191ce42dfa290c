#pragma once

#include <optional>
#include <span>
#include <vector>

#include "regretlab/grid.hpp"
#include "regretlab/types.hpp"

namespace regretlab {

// Log-domain posterior aligned index-for-index with a ParamGrid.
// logsumexp(log_weights) == 0 within 1e-9 after every normalization.
struct LogPosterior {
  std::vector<double> log_weights;
};

enum class PriorKind { uniform, quantized_gaussian };

struct PriorSpec {
  PriorKind kind = PriorKind::uniform;
  std::optional<double> gaussian_variance;  // nu^2, required for quantized_gaussian

  static PriorSpec Uniform() { return {PriorKind::uniform, std::nullopt}; }
  static PriorSpec QuantizedGaussian(double nu_sq) {
    return {PriorKind::quantized_gaussian, nu_sq};
  }
};

// uniform: every log-weight is -log M. quantized_gaussian: log-weight of
// psi proportional to -||psi||_2^2 / (2 nu^2), normalized on the grid.
LogPosterior init_posterior(const ParamGrid& grid, const PriorSpec& prior);

// Bayes step: add per-point log-likelihood of the example, renormalize.
LogPosterior posterior_update(const LogPosterior& posterior, const ParamGrid& grid,
                              const LabeledExample& ex);

// Posterior-weighted probability of label +1 for feature vector x, clamped
// into [min_i p_i, max_i p_i] and strictly inside (0,1).
double mixture_predict(const LogPosterior& posterior, const ParamGrid& grid,
                       std::span<const double> x);

struct RunResult {
  RegretTrace trace;
  LogPosterior posterior;
};

// Sequential predict-score-update over the sequence. Each round conditions
// on x_t before y_t is revealed; the per-round loss is -log of the predicted
// probability of the realized label, so the total algorithm loss telescopes
// to -log of the mixture sequence probability.
RunResult run_online(const ParamGrid& grid, const PriorSpec& prior,
                     std::span<const LabeledExample> seq, ParamVector comparator);

}  // namespace regretlab
