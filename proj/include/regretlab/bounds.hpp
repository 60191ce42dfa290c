#pragma once

#include <cstddef>
#include <string>

#include "regretlab/types.hpp"

namespace regretlab {

// Inputs of the closed-form regret calculator. T is real-valued here; the
// formulas are defined for any horizon >= 2. eps_exponent is the slack
// exponent in T^(1-eps), distinct from a grid's lattice spacing.
// drop_vanishing evaluates every (1 +/- o(1)) factor as 1; no finite-horizon
// correction model exists, so false behaves the same.
struct BoundQuery {
  int d = 1;
  double T = 2.0;
  double B = 1.0;
  Norm norm = Norm::l2;
  double eps_exponent = 0.0;
  bool drop_vanishing = true;
};

void validate_query(const BoundQuery& q);

struct BoundBranch {
  std::string label;
  double nats = 0.0;
};

// Effective count of log-T units in B:
// min(B/ln T, T^(1-eps)/min(T^(1-eps), d)).
double gamma_effective(const BoundQuery& q);

// Raw single-family transcriptions, exposed for direct testing. Each applies
// its own branch rule (boundary ties go to the plateau/large-d branch).
namespace formulas {

double small_d_lower(int d, double T);   // (d/2) ln(T/d), used when d <= 1
BoundBranch linf_lower(const BoundQuery& q);
BoundBranch l2_lower(const BoundQuery& q);
BoundBranch l1_lower(const BoundQuery& q);

double linf_upper(int d, double T, double B);  // (d/2) ln(B^2 T e / 4 + e)
double l2_upper(int d, double T, double B);    // (d/2) ln(B^2 T e / (4d) + e)
double l1_log_upper(int d, double T, double B);      // (d/2) ln(B^2 T e^3 / (4 d^2))
double l1_crossover_upper(int d, double T, double B);  // (d/2) ln(4e) + B sqrt(T)/2
double l1_large_upper(int d, double T, double B);    // d/2 + sqrt(2 d B sqrt(T))
double l1_sublinear_upper(int d, double T, double B);  // (5/4) 2^(3/5) B^(2/5) d^(3/5) T^(1/5)

}  // namespace formulas

// Worst-sequence regret lower bound. Per-family branch selection follows
// the stated thresholds; the returned value is the max over the families
// whose balls are contained in the queried one (a lower bound for a
// contained comparator class is valid for the containing class), which is
// what makes the l1 <= l2 <= linf ordering hold identically.
BoundBranch lower_bound(const BoundQuery& q);

// Achievable-regret upper bound, symmetrically the min over containing
// families. For l1 with d >= B sqrt(T) the value additionally takes min
// with the log branch's validity-edge value (d/2) ln(e^3/4): a fixed-horizon
// mixture padded with zero-feature rounds runs at any longer horizon with
// unchanged regret, so every longer-horizon bound applies. This keeps the
// calculator nondecreasing in T across the region crossing.
BoundBranch upper_bound(const BoundQuery& q);

// ln M + d T eps^2 / 32: the instance-level bound of the uniform-grid
// mixture (prior term ln M plus quantization term).
double grid_mixture_regret_bound(std::size_t M, int d, double T, double spacing_eps);

// Worst-case prior variance for the Gaussian-prior mixture: B^2 (linf),
// B^2/d (l2). Throws for l1, which uses the lattice construction instead.
double gaussian_prior_variance(const NormConstraint& constraint, int d);

// Companion spacing: eps^2 = 4 nu^2 / (4 + T nu^2).
double gaussian_induced_spacing_sq(double nu_sq, double T);

// (d(m-1)/2) ln(T/(m d)) for m >= 2 labels; requires T > m d.
double multilabel_lower_bound(int d, int m, double T);

// Row of the summary table the query falls in: "row1".."row3" (l1),
// "row4".."row6" (l2), "row7"/"row8" (linf). Thresholds (gamma T)^(1/3),
// B sqrt(T), sqrt(gamma T), B^2 T, gamma T; boundary values go to the
// larger-d row.
std::string classify_region(const BoundQuery& q);

struct BoundReport {
  double gamma = 0.0;
  std::string region_label;  // classify_region row
  std::string lower_region;  // branch attaining the lower bound
  std::string upper_region;  // branch attaining the upper bound
  double lower_nats = 0.0;
  double upper_nats = 0.0;
};

BoundReport evaluate_bounds(const BoundQuery& q);

}  // namespace regretlab
