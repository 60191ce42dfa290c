#include "regretlab/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "regretlab/logistic.hpp"
#include "regretlab/projection.hpp"

namespace regretlab {

double kt_predict(const KtState& state) {
  if (state.count_pos > state.count_total) {
    throw std::invalid_argument("count_pos exceeds count_total");
  }
  return (static_cast<double>(state.count_pos) + 0.5) /
         (static_cast<double>(state.count_total) + 1.0);
}

RegretTrace kt_run(std::span<const int> labels) {
  KtState state;
  std::vector<double> alg_loss;
  alg_loss.reserve(labels.size());
  std::uint64_t pos = 0;
  for (int y : labels) {
    if (y != 1 && y != -1) throw std::invalid_argument("labels must be -1 or +1");
    const double p = kt_predict(state);
    alg_loss.push_back(-std::log(y == 1 ? p : 1.0 - p));
    ++state.count_total;
    if (y == 1) {
      ++state.count_pos;
      ++pos;
    }
  }

  const double T = static_cast<double>(labels.size());
  const double rate = labels.empty() ? 0.5 : static_cast<double>(pos) / T;
  std::vector<double> comp_loss(labels.size());
  for (std::size_t t = 0; t < labels.size(); ++t) {
    // Empirical-rate comparator; a zero-probability label never occurs for
    // the realized sequence, so these stay finite (0 log 0 = 0).
    comp_loss[t] = labels[t] == 1 ? -std::log(rate) : -std::log(1.0 - rate);
  }
  double logit = 0.0;
  if (rate <= 0.0) {
    logit = -50.0;
  } else if (rate >= 1.0) {
    logit = 50.0;
  } else {
    logit = std::log(rate / (1.0 - rate));
  }
  return make_trace_with_losses(std::move(alg_loss), std::move(comp_loss), {logit});
}

RegretTrace ogd_run(std::span<const LabeledExample> seq, const NormConstraint& constraint,
                    const RateSchedule& schedule, ParamVector comparator) {
  validate_constraint(constraint);
  if (!schedule) throw std::invalid_argument("learning-rate schedule is empty");
  const std::size_t d = seq.empty() ? comparator.size() : seq[0].features.size();
  ParamVector theta(d, 0.0);
  std::vector<double> alg_loss;
  alg_loss.reserve(seq.size());
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const auto& ex = seq[t];
    alg_loss.push_back(example_loss(theta, ex));
    const double rate = schedule(t + 1);
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
      throw std::invalid_argument("learning rate must be nonnegative at every round");
    }
    const double y = ex.label;
    const double w = -y * sigmoid(-y * dot(theta, ex.features));
    for (std::size_t j = 0; j < d; ++j) theta[j] -= rate * w * ex.features[j];
    theta = project(theta, constraint);
  }
  return make_trace(std::move(alg_loss), std::move(comparator), seq);
}

}  // namespace regretlab
