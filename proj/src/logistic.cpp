#include "regretlab/logistic.hpp"

#include <cmath>
#include <stdexcept>

namespace regretlab {

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double z) {
  if (z > 0.0) {
    return z + std::log1p(std::exp(-z));
  }
  return std::log1p(std::exp(z));
}

double log_sigmoid(double z) { return -softplus(-z); }

double dot(std::span<const double> theta, std::span<const double> x) {
  if (theta.size() != x.size()) {
    throw std::invalid_argument("dimension mismatch: theta has " +
                                std::to_string(theta.size()) + " entries, x has " +
                                std::to_string(x.size()));
  }
  double z = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) z += theta[i] * x[i];
  return z;
}

double label_probability(const ParamVector& theta, const LabeledExample& ex) {
  check_finite(theta, "theta");
  double z = dot(theta, ex.features);
  return sigmoid(static_cast<double>(ex.label) * z);
}

double example_loss(const ParamVector& theta, const LabeledExample& ex) {
  check_finite(theta, "theta");
  double z = dot(theta, ex.features);
  return softplus(-static_cast<double>(ex.label) * z);
}

double cumulative_loss(const ParamVector& theta, std::span<const LabeledExample> seq) {
  double total = 0.0;
  for (const auto& ex : seq) total += example_loss(theta, ex);
  return total;
}

}  // namespace regretlab
