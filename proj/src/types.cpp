#include "regretlab/types.hpp"

#include <cmath>
#include <stdexcept>

#include "regretlab/logistic.hpp"

namespace regretlab {

std::string norm_name(Norm n) {
  switch (n) {
    case Norm::l1: return "l1";
    case Norm::l2: return "l2";
    case Norm::linf: return "linf";
  }
  return "?";
}

Norm parse_norm(const std::string& name) {
  if (name == "l1") return Norm::l1;
  if (name == "l2") return Norm::l2;
  if (name == "linf") return Norm::linf;
  throw std::invalid_argument("unknown norm '" + name + "' (expected l1, l2 or linf)");
}

void validate_constraint(const NormConstraint& c) {
  if (!(c.radius > 0.0) || !std::isfinite(c.radius)) {
    throw std::invalid_argument("constraint radius must be positive, got " +
                                std::to_string(c.radius));
  }
}

void check_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + " has a non-finite entry");
    }
  }
}

LabeledExample::LabeledExample(std::vector<double> x, int y)
    : features(std::move(x)), label(y) {
  if (label != 1 && label != -1) {
    throw std::invalid_argument("label must be -1 or +1, got " + std::to_string(label));
  }
  for (double xi : features) {
    if (!(std::fabs(xi) <= 1.0)) {  // also rejects NaN
      throw std::invalid_argument("feature coordinate " + std::to_string(xi) +
                                  " outside [-1, 1]");
    }
  }
}

double norm_value(std::span<const double> v, Norm n) {
  double acc = 0.0;
  switch (n) {
    case Norm::l1:
      for (double x : v) acc += std::fabs(x);
      return acc;
    case Norm::l2:
      for (double x : v) acc += x * x;
      return std::sqrt(acc);
    case Norm::linf:
      for (double x : v) acc = std::max(acc, std::fabs(x));
      return acc;
  }
  return acc;
}

double RegretTrace::total_alg_loss() const {
  double s = 0.0;
  for (double x : alg_loss) s += x;
  return s;
}

double RegretTrace::total_comparator_loss() const {
  double s = 0.0;
  for (double x : comparator_loss) s += x;
  return s;
}

RegretTrace make_trace(std::vector<double> alg_loss, ParamVector comparator,
                       std::span<const LabeledExample> seq) {
  if (alg_loss.size() != seq.size()) {
    throw std::invalid_argument("trace length does not match the sequence");
  }
  std::vector<double> comp_loss(seq.size());
  for (std::size_t t = 0; t < seq.size(); ++t) {
    comp_loss[t] = example_loss(comparator, seq[t]);
  }
  return make_trace_with_losses(std::move(alg_loss), std::move(comp_loss),
                                std::move(comparator));
}

RegretTrace make_trace_with_losses(std::vector<double> alg_loss,
                                   std::vector<double> comparator_loss,
                                   ParamVector comparator) {
  if (alg_loss.size() != comparator_loss.size()) {
    throw std::invalid_argument("loss vectors have different lengths");
  }
  RegretTrace trace;
  trace.alg_loss = std::move(alg_loss);
  trace.comparator_loss = std::move(comparator_loss);
  trace.comparator = std::move(comparator);
  trace.cum_regret.resize(trace.alg_loss.size());
  double running = 0.0;
  for (std::size_t t = 0; t < trace.alg_loss.size(); ++t) {
    running += trace.alg_loss[t] - trace.comparator_loss[t];
    trace.cum_regret[t] = running;
  }
  return trace;
}

}  // namespace regretlab
