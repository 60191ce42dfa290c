#pragma once

#include "regretlab/types.hpp"

namespace regretlab {

// Euclidean projection onto the constraint ball. Exact for all three norms:
// coordinatewise clip (linf), radial scaling (l2), soft-threshold with the
// sorted-prefix threshold (l1, coordinates exactly at the threshold go to
// zero). Idempotent; feasible input comes back unchanged.
ParamVector project(const ParamVector& theta, const NormConstraint& constraint);

}  // namespace regretlab
