#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "regretlab/grid.hpp"
#include "regretlab/mixture.hpp"
#include "regretlab/types.hpp"

namespace regretlab {

// Fixed feature sequence for the distinguishable-grid experiments.
//
// Plain (no gamma_levels): d segments of length floor(T/d); segment i sets
// coordinate i to 1, everything else 0. Scaled (gamma_levels = g): one
// segment per coordinate 2..d, each split into 2g+1 subsegments with
// x_1 = s/g for s = -g..g and the segment coordinate set to 1. Leftover
// rounds get the all-zero feature vector; they add identical loss to every
// model, so regret differences are untouched.
struct SegmentedDesign {
  int dim = 1;
  std::int64_t horizon = 0;
  std::optional<int> gamma_levels;
  std::vector<double> features;  // horizon x dim, row-major

  std::span<const double> row(std::int64_t t) const {
    return {features.data() + static_cast<std::size_t>(t) * dim,
            static_cast<std::size_t>(dim)};
  }
};

SegmentedDesign build_design(int d, std::int64_t T,
                             std::optional<int> gamma_levels = std::nullopt);

enum class TheoryGridRule { plain, scaled };

// Parameter grid matched to a design, stored through the logit map.
//
// plain: per-dimension probabilities 0, delta, 2*delta, ..., k*delta with
// delta = sqrt(d/T)^(1-eps) and k = floor(1/delta); the endpoints p = 0 and
// p = 1 are clipped to 1/(2T) and 1 - 1/(2T) so logits stay finite.
// points_per_dim overrides the count: m points at spacing 1/(m-1).
//
// scaled: requires a gamma design; coordinate 1 is pinned at g*ln(T) and
// each remaining dimension takes the union over s = -g..g of
// logit(j*delta) - s*ln(T) for the interior j = 1..k-1, with
// delta = sqrt(d*g/T)^(1-eps).
ParamGrid build_theory_grid(const SegmentedDesign& design, TheoryGridRule rule,
                            double eps_exponent,
                            std::optional<int> points_per_dim = std::nullopt,
                            std::size_t cap = kDefaultGridCap);

struct SampledInstance {
  ParamVector theta_true;
  std::size_t theta_index = 0;
  std::vector<LabeledExample> sequence;
};

// Uniform draw of a grid point, then labels drawn independently from
// p(y | x_t, theta). Deterministic in the seed.
SampledInstance sample_and_label(const SegmentedDesign& design, const ParamGrid& grid,
                                 std::uint64_t seed);

// Maximum-likelihood grid identification; exact ties resolve to the lowest
// enumeration index.
std::size_t ml_identify_index(const ParamGrid& grid, std::span<const LabeledExample> seq);
ParamVector ml_identify(const ParamGrid& grid, std::span<const LabeledExample> seq);

struct DistinguishabilityReport {
  std::size_t grid_cardinality_M = 0;
  std::int64_t trials = 0;
  double error_rate_pe = 0.0;
  double expected_regret_lower = 0.0;  // (1 - Pe) ln M - 1, never above ln M
};

// Monte Carlo estimate of the misidentification probability. Trials run in
// parallel, each on its own derived stream, and are aggregated in index
// order, so the report is identical for any thread count.
DistinguishabilityReport estimate_pe(const SegmentedDesign& design, const ParamGrid& grid,
                                     std::int64_t trials, std::uint64_t seed);

// An online predictor evaluated by its total log-loss on a sequence.
using OnlineAlgorithm = std::function<double(std::span<const LabeledExample>)>;

OnlineAlgorithm make_grid_mixture(const ParamGrid& grid, const PriorSpec& prior);

struct CapacityReport {
  double measured_expected_regret = 0.0;
  double bound = 0.0;  // (1 - Pe) ln M - 1
  double error_rate_pe = 0.0;
  std::size_t grid_cardinality_M = 0;
  std::int64_t trials = 0;
  double std_error = 0.0;  // of the regret mean
  bool violation = false;  // measured < bound - 3 * std_error
};

// Redundancy-capacity experiment: average regret of `algorithm` against the
// drawn model over seeded trials, reported next to the misidentification
// bound from the same trials.
CapacityReport capacity_experiment(const OnlineAlgorithm& algorithm,
                                   const SegmentedDesign& design, const ParamGrid& grid,
                                   std::int64_t trials, std::uint64_t seed);

}  // namespace regretlab
