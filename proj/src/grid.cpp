#include "regretlab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace regretlab {

ParamGrid::ParamGrid(int dim, std::vector<double> coords, double spacing_eps,
                     NormConstraint constraint, std::string margin_rule)
    : dim_(dim),
      coords_(std::move(coords)),
      spacing_eps_(spacing_eps),
      constraint_(constraint),
      margin_rule_(std::move(margin_rule)) {
  if (dim_ < 1) throw std::invalid_argument("grid dimension must be >= 1");
  if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dim_) != 0) {
    throw std::invalid_argument("grid coordinate buffer does not hold a whole "
                                "number of points");
  }
  check_finite(coords_, "grid coordinates");
}

ParamGrid ParamGrid::from_points(int dim, const std::vector<ParamVector>& pts,
                                 std::string descriptor) {
  std::vector<double> coords;
  coords.reserve(pts.size() * static_cast<std::size_t>(dim));
  for (const auto& p : pts) {
    if (p.size() != static_cast<std::size_t>(dim)) {
      throw std::invalid_argument("point dimension mismatch in from_points");
    }
    coords.insert(coords.end(), p.begin(), p.end());
  }
  double radius = 0.0;
  for (double c : coords) radius = std::max(radius, std::fabs(c));
  NormConstraint c{Norm::linf, radius > 0.0 ? radius : 1.0};
  return ParamGrid(dim, std::move(coords), 0.0, c, std::move(descriptor));
}

double default_spacing(std::int64_t T) {
  if (T < 1) throw std::invalid_argument("horizon must be >= 1");
  return 4.0 / std::sqrt(static_cast<double>(T));
}

ParamGrid build_grid(int d, const NormConstraint& constraint, double spacing_eps,
                     std::size_t cap) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  validate_constraint(constraint);
  if (!(spacing_eps > 0.0) || !std::isfinite(spacing_eps)) {
    throw std::invalid_argument("spacing must be a positive finite number");
  }
  const double B = constraint.radius;
  const std::int64_t lim = static_cast<std::int64_t>(std::floor(B / spacing_eps)) + 1;
  const std::int64_t per_dim = 2 * lim + 1;

  unsigned __int128 implied = 1;
  bool over = false;
  for (int j = 0; j < d && !over; ++j) {
    implied *= static_cast<unsigned __int128>(per_dim);
    if (implied > static_cast<unsigned __int128>(cap) * 16 + (1u << 30)) over = true;
  }
  if (over || implied > static_cast<unsigned __int128>(cap)) {
    std::string size_str =
        over ? ("more than " + std::to_string(per_dim) + "^" + std::to_string(d))
             : std::to_string(static_cast<unsigned long long>(implied));
    throw std::length_error("requested lattice of " + size_str +
                            " points exceeds the cardinality cap of " +
                            std::to_string(cap));
  }

  // Inclusion rules in index space, so boundary points are kept exactly.
  const double l1_budget = B / spacing_eps + d + 1e-9;
  const double l2_budget_sq = [&] {
    double r = B / spacing_eps + std::sqrt(static_cast<double>(d));
    return r * r + 1e-9;
  }();

  std::vector<double> coords;
  std::vector<std::int64_t> idx(static_cast<std::size_t>(d), -lim);
  while (true) {
    bool keep = true;
    if (constraint.norm == Norm::l1) {
      std::int64_t s = 0;
      for (std::int64_t i : idx) s += std::llabs(i);
      keep = static_cast<double>(s) <= l1_budget;
    } else if (constraint.norm == Norm::l2) {
      double s = 0.0;
      for (std::int64_t i : idx) s += static_cast<double>(i) * static_cast<double>(i);
      keep = s <= l2_budget_sq;
    }
    if (keep) {
      for (std::int64_t i : idx) coords.push_back(static_cast<double>(i) * spacing_eps);
    }
    // lexicographic odometer, first coordinate slowest
    int j = d - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == lim) {
      idx[static_cast<std::size_t>(j)] = -lim;
      --j;
    }
    if (j < 0) break;
    ++idx[static_cast<std::size_t>(j)];
  }

  std::string rule;
  switch (constraint.norm) {
    case Norm::l1: rule = "lattice-l1: ||psi||_1 <= B + d*eps"; break;
    case Norm::l2: rule = "lattice-l2: ||psi||_2 <= B + sqrt(d)*eps"; break;
    case Norm::linf: rule = "lattice-linf: ||psi||_inf <= B + eps"; break;
  }
  return ParamGrid(d, std::move(coords), spacing_eps, constraint, std::move(rule));
}

}  // namespace regretlab
