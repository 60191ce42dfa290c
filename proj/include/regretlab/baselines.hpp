#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>

#include "regretlab/types.hpp"

namespace regretlab {

// Sufficient statistics of the add-1/2 sequential Bernoulli estimator.
struct KtState {
  std::uint64_t count_pos = 0;
  std::uint64_t count_total = 0;
};

// (count_pos + 1/2) / (count_total + 1).
double kt_predict(const KtState& state);

// Sequential predict-then-update over +/-1 labels (features are implicitly
// x = 1). The comparator is the empirical-rate Bernoulli model; its loss is
// computed from the rate directly with 0 log 0 = 0, and the trace stores the
// rate's logit clamped to +/-50 so the vector stays finite.
RegretTrace kt_run(std::span<const int> labels);

using RateSchedule = std::function<double(std::size_t)>;  // t = 1, 2, ...

inline RateSchedule inverse_sqrt_schedule() {
  return [](std::size_t t) { return 1.0 / std::sqrt(static_cast<double>(t)); };
}

// Projected online gradient descent on the per-round logistic loss,
// predicting through label_probability(theta_t, x_t). Iterates stay inside
// the ball. The comparator is supplied by the caller (typically
// best_comparator's theta).
RegretTrace ogd_run(std::span<const LabeledExample> seq, const NormConstraint& constraint,
                    const RateSchedule& schedule, ParamVector comparator);

}  // namespace regretlab
