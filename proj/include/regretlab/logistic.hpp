#pragma once

#include <span>

#include "regretlab/types.hpp"

namespace regretlab {

// 1 / (1 + exp(-z)). Split on the sign of z so exp never sees a large
// positive argument.
double sigmoid(double z);

// log(1 + exp(z)), accurate to relative ~1e-15 for |z| up to at least 1e4:
// for z > 0 uses the identity log(1+e^z) = z + log(1+e^-z).
double softplus(double z);

// log(sigmoid(z)) = -softplus(-z).
double log_sigmoid(double z);

// Throws on length mismatch.
double dot(std::span<const double> theta, std::span<const double> x);

// p(y | x, theta) = sigmoid(y * x.theta), strictly inside (0,1) for finite
// inputs up to double rounding.
double label_probability(const ParamVector& theta, const LabeledExample& ex);

// -log p(y | x, theta) = softplus(-y * x.theta), in nats, always >= 0.
double example_loss(const ParamVector& theta, const LabeledExample& ex);

// Sum of example_loss over the sequence; empty sequence gives 0.
double cumulative_loss(const ParamVector& theta, std::span<const LabeledExample> seq);

}  // namespace regretlab
