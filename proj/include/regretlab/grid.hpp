#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "regretlab/types.hpp"

namespace regretlab {

inline constexpr std::size_t kDefaultGridCap = 20'000'000;

// Finite support of a discrete mixture. Points are stored row-major
// (size() x dim()) in construction order; that order is part of the
// contract, posterior weights are aligned to it index for index.
class ParamGrid {
 public:
  ParamGrid(int dim, std::vector<double> coords, double spacing_eps,
            NormConstraint constraint, std::string margin_rule);

  // Arbitrary point set (singletons, hand-built grids). spacing_eps is 0,
  // meaning "not a lattice".
  static ParamGrid from_points(int dim, const std::vector<ParamVector>& pts,
                               std::string descriptor);

  int dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& coords() const { return coords_; }
  double spacing_eps() const { return spacing_eps_; }
  const NormConstraint& constraint() const { return constraint_; }
  const std::string& margin_rule() const { return margin_rule_; }

 private:
  int dim_;
  std::vector<double> coords_;
  double spacing_eps_;
  NormConstraint constraint_;
  std::string margin_rule_;
};

// All lattice points i*eps per coordinate with |i| <= floor(B/eps)+1, kept
// when inside the per-norm margin: ||psi||_1 <= B + d*eps (l1),
// ||psi||_2 <= B + sqrt(d)*eps (l2), ||psi||_inf <= B + eps (linf). The
// margin guarantees that every feasible theta has all 2^d of its bracketing
// lattice corners in the grid. Enumeration is lexicographic in coordinate
// indices, first coordinate slowest.
//
// Throws std::length_error naming the cap and the requested size when the
// full box (2*(floor(B/eps)+1)+1)^d exceeds `cap`.
ParamGrid build_grid(int d, const NormConstraint& constraint, double spacing_eps,
                     std::size_t cap = kDefaultGridCap);

// Lattice step used by the uniform-grid mixture at horizon T: 4/sqrt(T).
double default_spacing(std::int64_t T);

}  // namespace regretlab
