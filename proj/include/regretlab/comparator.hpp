#pragma once

#include <cstddef>
#include <span>

#include "regretlab/types.hpp"

namespace regretlab {

struct ComparatorResult {
  ParamVector theta_star;
  double loss = 0.0;  // cumulative_loss(theta_star, seq), nats
  std::size_t iterations = 0;
  bool converged = false;
};

// Best-in-hindsight parameter over the constraint ball: projected gradient
// descent with Armijo backtracking on the convex cumulative logistic loss,
// started at 0. Stops when the unit-step projected-gradient norm drops to
// tol or the iteration cap ceil(50 d ln(T+1)) is hit; the converged flag
// reports which.
ComparatorResult best_comparator(std::span<const LabeledExample> seq,
                                 const NormConstraint& constraint,
                                 double tol = 1e-8);

}  // namespace regretlab
