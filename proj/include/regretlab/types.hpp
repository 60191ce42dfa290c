#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace regretlab {

using ParamVector = std::vector<double>;

enum class Norm { l1, l2, linf };

std::string norm_name(Norm n);
Norm parse_norm(const std::string& name);

// Comparator class: { theta : ||theta||_norm <= radius }.
struct NormConstraint {
  Norm norm = Norm::l2;
  double radius = 1.0;
};

// Throws std::invalid_argument when radius is not a positive finite number.
void validate_constraint(const NormConstraint& c);

// One observed round. Construction rejects coordinates outside [-1, 1]
// (clipping would silently invalidate every bound comparison) and labels
// other than -1 / +1.
struct LabeledExample {
  LabeledExample(std::vector<double> x, int y);

  std::vector<double> features;
  int label;
};

void check_finite(std::span<const double> v, const char* what);
double norm_value(std::span<const double> v, Norm n);

// Per-round loss accounting for one online run against a fixed comparator.
// cum_regret[t] is the running sum of alg_loss - comparator_loss.
struct RegretTrace {
  std::vector<double> alg_loss;         // nats
  std::vector<double> comparator_loss;  // nats
  std::vector<double> cum_regret;       // nats
  ParamVector comparator;

  std::size_t rounds() const { return alg_loss.size(); }
  double total_alg_loss() const;
  double total_comparator_loss() const;
  double final_regret() const { return cum_regret.empty() ? 0.0 : cum_regret.back(); }
};

// Builds the trace, filling comparator losses from the model losses on seq.
RegretTrace make_trace(std::vector<double> alg_loss, ParamVector comparator,
                       std::span<const LabeledExample> seq);

// Variant for predictors whose comparator is not a logistic model over the
// features (the KT empirical-rate comparator).
RegretTrace make_trace_with_losses(std::vector<double> alg_loss,
                                   std::vector<double> comparator_loss,
                                   ParamVector comparator);

}  // namespace regretlab
