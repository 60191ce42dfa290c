#include "regretlab/adversary.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "regretlab/kernels.hpp"
#include "regretlab/logistic.hpp"
#include "regretlab/rng.hpp"

namespace regretlab {

SegmentedDesign build_design(int d, std::int64_t T, std::optional<int> gamma_levels) {
  if (d < 1) throw std::invalid_argument("design dimension must be >= 1");
  if (T < 1) throw std::invalid_argument("design horizon must be >= 1");
  SegmentedDesign design;
  design.dim = d;
  design.horizon = T;
  design.gamma_levels = gamma_levels;
  design.features.assign(static_cast<std::size_t>(T) * d, 0.0);

  if (!gamma_levels.has_value()) {
    if (T < d) {
      throw std::invalid_argument("plain design needs T >= d (got T=" +
                                  std::to_string(T) + ", d=" + std::to_string(d) + ")");
    }
    const std::int64_t seg = T / d;
    for (int i = 0; i < d; ++i) {
      for (std::int64_t t = i * seg; t < (i + 1) * seg; ++t) {
        design.features[static_cast<std::size_t>(t) * d + i] = 1.0;
      }
    }
    return design;
  }

  const int g = *gamma_levels;
  if (g < 1) throw std::invalid_argument("gamma_levels must be >= 1");
  if (d < 2) throw std::invalid_argument("scaled design needs d >= 2");
  const std::int64_t subs = static_cast<std::int64_t>(d - 1) * (2 * g + 1);
  if (T < subs) {
    throw std::invalid_argument("scaled design needs T >= (d-1)(2*gamma+1) = " +
                                std::to_string(subs));
  }
  const std::int64_t sub_len = T / subs;
  std::int64_t t = 0;
  for (int seg = 1; seg < d; ++seg) {
    for (int s = -g; s <= g; ++s) {
      for (std::int64_t r = 0; r < sub_len; ++r, ++t) {
        double* row = design.features.data() + static_cast<std::size_t>(t) * d;
        row[0] = static_cast<double>(s) / g;
        row[seg] = 1.0;
      }
    }
  }
  return design;
}

namespace {

double logit(double p) { return std::log(p / (1.0 - p)); }

ParamGrid power_grid(int d, const std::vector<std::vector<double>>& per_dim,
                     double spacing, std::size_t cap, const std::string& rule) {
  unsigned __int128 m = 1;
  for (const auto& s : per_dim) {
    m *= static_cast<unsigned __int128>(s.size());
    if (m > static_cast<unsigned __int128>(cap)) {
      throw std::length_error("theory grid would exceed the cardinality cap of " +
                              std::to_string(cap));
    }
  }
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(m) * d);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    for (int j = 0; j < d; ++j) coords.push_back(per_dim[j][idx[j]]);
    int j = d - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] + 1 == per_dim[j].size()) {
      idx[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
    ++idx[static_cast<std::size_t>(j)];
  }
  double radius = 0.0;
  for (double c : coords) radius = std::max(radius, std::fabs(c));
  return ParamGrid(d, std::move(coords), spacing,
                   NormConstraint{Norm::linf, radius > 0.0 ? radius : 1.0}, rule);
}

}  // namespace

ParamGrid build_theory_grid(const SegmentedDesign& design, TheoryGridRule rule,
                            double eps_exponent, std::optional<int> points_per_dim,
                            std::size_t cap) {
  if (!(eps_exponent >= 0.0 && eps_exponent < 1.0)) {
    throw std::invalid_argument("eps_exponent must lie in [0, 1)");
  }
  const int d = design.dim;
  const double T = static_cast<double>(design.horizon);
  const double p_floor = 1.0 / (2.0 * T);

  if (rule == TheoryGridRule::plain) {
    double delta;
    std::int64_t k;
    if (points_per_dim.has_value()) {
      if (*points_per_dim < 2) throw std::invalid_argument("need at least 2 points per dimension");
      k = *points_per_dim - 1;
      delta = 1.0 / static_cast<double>(k);
    } else {
      delta = std::pow(d / T, 0.5 * (1.0 - eps_exponent));
      k = static_cast<std::int64_t>(std::floor(1.0 / delta));
      if (k < 1) throw std::invalid_argument("horizon too short for a 2-point grid");
    }
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(k) + 1);
    for (std::int64_t j = 0; j <= k; ++j) {
      // probabilities j*delta; the endpoints 0 and 1 are clipped so logits
      // stay finite
      double p = std::clamp(static_cast<double>(j) * delta, p_floor, 1.0 - p_floor);
      pts.push_back(logit(p));
    }
    std::vector<std::vector<double>> per_dim(static_cast<std::size_t>(d), pts);
    return power_grid(d, per_dim, delta, cap,
                      "theory-plain: probability spacing delta=" + std::to_string(delta));
  }

  // scaled
  if (!design.gamma_levels.has_value()) {
    throw std::invalid_argument("scaled grid rule requires a gamma design");
  }
  if (points_per_dim.has_value()) {
    throw std::invalid_argument("grid-points override is only defined for the plain rule");
  }
  const int g = *design.gamma_levels;
  const double delta = std::pow(d * static_cast<double>(g) / T, 0.5 * (1.0 - eps_exponent));
  const std::int64_t k = static_cast<std::int64_t>(std::floor(1.0 / delta));
  if (k < 2) throw std::invalid_argument("horizon too short for the scaled grid");
  const double logT = std::log(T);

  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(2 * g + 1) * (k - 1));
  for (int s = -g; s <= g; ++s) {
    for (std::int64_t j = 1; j < k; ++j) {  // interior points only
      pts.push_back(logit(static_cast<double>(j) * delta) - s * logT);
    }
  }
  std::vector<std::vector<double>> per_dim;
  per_dim.push_back({static_cast<double>(g) * logT});  // pinned first coordinate
  for (int j = 1; j < d; ++j) per_dim.push_back(pts);
  return power_grid(d, per_dim, delta, cap,
                    "theory-scaled: gamma=" + std::to_string(g) +
                        " probability spacing delta=" + std::to_string(delta));
}

SampledInstance sample_and_label(const SegmentedDesign& design, const ParamGrid& grid,
                                 std::uint64_t seed) {
  if (grid.dim() != design.dim) {
    throw std::invalid_argument("grid dimension does not match the design");
  }
  Rng rng(seed);
  SampledInstance inst;
  inst.theta_index = static_cast<std::size_t>(rng.next_below(grid.size()));
  auto pt = grid.point(inst.theta_index);
  inst.theta_true.assign(pt.begin(), pt.end());
  inst.sequence.reserve(static_cast<std::size_t>(design.horizon));
  for (std::int64_t t = 0; t < design.horizon; ++t) {
    auto x = design.row(t);
    const double p = sigmoid(dot(inst.theta_true, x));
    const int y = rng.next_unit() < p ? 1 : -1;
    inst.sequence.emplace_back(std::vector<double>(x.begin(), x.end()), y);
  }
  return inst;
}

std::size_t ml_identify_index(const ParamGrid& grid, std::span<const LabeledExample> seq) {
  return kernels::best_log_likelihood_index(grid, seq);
}

ParamVector ml_identify(const ParamGrid& grid, std::span<const LabeledExample> seq) {
  auto pt = grid.point(ml_identify_index(grid, seq));
  return {pt.begin(), pt.end()};
}

DistinguishabilityReport estimate_pe(const SegmentedDesign& design, const ParamGrid& grid,
                                     std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  std::vector<unsigned char> errs(static_cast<std::size_t>(trials), 0);

#pragma omp parallel for num_threads(kernels::thread_cap()) schedule(static)
  for (std::int64_t i = 0; i < trials; ++i) {
    auto inst = sample_and_label(design, grid, Rng::derive(seed, static_cast<std::uint64_t>(i)));
    errs[static_cast<std::size_t>(i)] =
        ml_identify_index(grid, inst.sequence) != inst.theta_index;
  }

  std::int64_t wrong = 0;
  for (unsigned char e : errs) wrong += e;
  DistinguishabilityReport rep;
  rep.grid_cardinality_M = grid.size();
  rep.trials = trials;
  rep.error_rate_pe = static_cast<double>(wrong) / static_cast<double>(trials);
  const double log_m = std::log(static_cast<double>(grid.size()));
  rep.expected_regret_lower = std::min((1.0 - rep.error_rate_pe) * log_m - 1.0, log_m);
  return rep;
}

OnlineAlgorithm make_grid_mixture(const ParamGrid& grid, const PriorSpec& prior) {
  auto shared = std::make_shared<ParamGrid>(grid);
  return [shared, prior](std::span<const LabeledExample> seq) {
    auto post = init_posterior(*shared, prior);
    double total = 0.0;
    for (const auto& ex : seq) {
      total -= kernels::posterior_step(post.log_weights, *shared, ex);
    }
    return total;
  };
}

CapacityReport capacity_experiment(const OnlineAlgorithm& algorithm,
                                   const SegmentedDesign& design, const ParamGrid& grid,
                                   std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (!algorithm) throw std::invalid_argument("algorithm is empty");
  std::vector<double> regrets(static_cast<std::size_t>(trials), 0.0);
  std::vector<unsigned char> errs(static_cast<std::size_t>(trials), 0);

#pragma omp parallel for num_threads(kernels::thread_cap()) schedule(static)
  for (std::int64_t i = 0; i < trials; ++i) {
    auto inst = sample_and_label(design, grid, Rng::derive(seed, static_cast<std::uint64_t>(i)));
    errs[static_cast<std::size_t>(i)] =
        ml_identify_index(grid, inst.sequence) != inst.theta_index;
    const double alg_loss = algorithm(inst.sequence);
    regrets[static_cast<std::size_t>(i)] =
        alg_loss - cumulative_loss(inst.theta_true, inst.sequence);
  }

  std::int64_t wrong = 0;
  double mean = 0.0;
  for (std::int64_t i = 0; i < trials; ++i) {
    wrong += errs[static_cast<std::size_t>(i)];
    mean += regrets[static_cast<std::size_t>(i)];
  }
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double r : regrets) var += (r - mean) * (r - mean);
  var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;

  CapacityReport rep;
  rep.grid_cardinality_M = grid.size();
  rep.trials = trials;
  rep.error_rate_pe = static_cast<double>(wrong) / static_cast<double>(trials);
  const double log_m = std::log(static_cast<double>(grid.size()));
  rep.bound = std::min((1.0 - rep.error_rate_pe) * log_m - 1.0, log_m);
  rep.measured_expected_regret = mean;
  rep.std_error = std::sqrt(var / static_cast<double>(trials));
  rep.violation = mean < rep.bound - 3.0 * rep.std_error;
  return rep;
}

}  // namespace regretlab
