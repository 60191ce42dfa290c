#include "regretlab/projection.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace regretlab {

namespace {

// Re-projecting an already projected vector must return it unchanged, so the
// feasibility test carries a hair of slack above the float error a projected
// vector's recomputed norm can show.
constexpr double kFeasTol = 5e-13;

}  // namespace

ParamVector project(const ParamVector& theta, const NormConstraint& constraint) {
  validate_constraint(constraint);
  check_finite(theta, "theta");
  const double B = constraint.radius;
  ParamVector out = theta;

  switch (constraint.norm) {
    case Norm::linf:
      for (double& v : out) v = std::clamp(v, -B, B);
      return out;

    case Norm::l2: {
      double n = norm_value(out, Norm::l2);
      if (n <= B + kFeasTol) return out;
      const double s = B / n;
      for (double& v : out) v *= s;
      return out;
    }

    case Norm::l1: {
      double n = norm_value(out, Norm::l1);
      if (n <= B + kFeasTol) return out;
      // Sorted-prefix threshold: tau = (sum of the rho+1 largest |theta_i| - B)/(rho+1)
      // where rho is the largest index keeping |theta|_(rho) above tau.
      std::vector<double> mag(out.size());
      for (std::size_t i = 0; i < out.size(); ++i) mag[i] = std::fabs(out[i]);
      std::sort(mag.begin(), mag.end(), std::greater<>());
      double prefix = 0.0, tau = 0.0;
      for (std::size_t k = 0; k < mag.size(); ++k) {
        prefix += mag[k];
        double cand = (prefix - B) / static_cast<double>(k + 1);
        if (mag[k] > cand) tau = cand;
      }
      for (double& v : out) {
        double m = std::fabs(v) - tau;
        v = m > 0.0 ? std::copysign(m, v) : 0.0;  // exact threshold hits go to zero
      }
      return out;
    }
  }
  return out;
}

}  // namespace regretlab
