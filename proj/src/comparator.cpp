#include "regretlab/comparator.hpp"

#include <cmath>
#include <stdexcept>

#include "regretlab/logistic.hpp"
#include "regretlab/projection.hpp"

namespace regretlab {

namespace {

void gradient(const ParamVector& theta, std::span<const LabeledExample> seq,
              ParamVector& g) {
  std::fill(g.begin(), g.end(), 0.0);
  for (const auto& ex : seq) {
    const double y = ex.label;
    const double z = dot(theta, ex.features);
    const double w = -y * sigmoid(-y * z);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += w * ex.features[j];
  }
}

double l2_dist_sq(const ParamVector& a, const ParamVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

ComparatorResult best_comparator(std::span<const LabeledExample> seq,
                                 const NormConstraint& constraint, double tol) {
  if (seq.empty()) throw std::invalid_argument("best_comparator needs a nonempty sequence");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  validate_constraint(constraint);
  const std::size_t d = seq[0].features.size();
  for (const auto& ex : seq) {
    if (ex.features.size() != d) {
      throw std::invalid_argument("inconsistent feature dimensions in the sequence");
    }
  }
  const double T = static_cast<double>(seq.size());
  const std::size_t cap = static_cast<std::size_t>(
      std::ceil(50.0 * static_cast<double>(d) * std::log(T + 1.0)));

  ParamVector theta(d, 0.0);
  ParamVector g(d), trial(d);
  double f = cumulative_loss(theta, seq);
  double eta = 1.0;
  std::size_t iter = 0;
  bool converged = false;

  for (; iter < cap; ++iter) {
    gradient(theta, seq, g);

    ParamVector unit_step(d);
    for (std::size_t j = 0; j < d; ++j) unit_step[j] = theta[j] - g[j];
    unit_step = project(unit_step, constraint);
    if (std::sqrt(l2_dist_sq(theta, unit_step)) <= tol) {
      converged = true;
      break;
    }

    // Armijo backtracking on the projection arc; the step is allowed to grow
    // again after every accepted iterate.
    eta = std::min(eta * 2.0, 1e12);
    double f_trial = f;
    while (true) {
      for (std::size_t j = 0; j < d; ++j) trial[j] = theta[j] - eta * g[j];
      trial = project(trial, constraint);
      const double dist_sq = l2_dist_sq(trial, theta);
      double lin = 0.0;
      for (std::size_t j = 0; j < d; ++j) lin += g[j] * (trial[j] - theta[j]);
      f_trial = cumulative_loss(trial, seq);
      if (f_trial <= f + lin + dist_sq / (2.0 * eta) + 1e-12) break;
      eta *= 0.5;
      if (eta < 1e-18) break;  // stalled below float resolution
    }
    theta = trial;
    f = f_trial;
  }

  ComparatorResult res;
  res.theta_star = theta;
  res.loss = cumulative_loss(theta, seq);
  res.iterations = iter;
  res.converged = converged;
  return res;
}

}  // namespace regretlab
