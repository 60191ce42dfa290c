#include "regretlab/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace regretlab {

namespace {

constexpr double kE = 2.718281828459045235;
constexpr double kTwoPi = 6.283185307179586477;

double t_eff(const BoundQuery& q) { return std::pow(q.T, 1.0 - q.eps_exponent); }

BoundQuery with_norm(BoundQuery q, Norm n) {
  q.norm = n;
  return q;
}

}  // namespace

void validate_query(const BoundQuery& q) {
  if (q.d < 1) throw std::invalid_argument("d must be >= 1");
  if (!(q.T >= 2.0) || !std::isfinite(q.T)) throw std::invalid_argument("T must be >= 2");
  if (!(q.B > 0.0) || !std::isfinite(q.B)) throw std::invalid_argument("B must be positive");
  if (!(q.eps_exponent >= 0.0 && q.eps_exponent < 1.0)) {
    throw std::invalid_argument("eps_exponent must lie in [0, 1)");
  }
}

double gamma_effective(const BoundQuery& q) {
  validate_query(q);
  const double te = t_eff(q);
  const double capped = te / std::min(te, static_cast<double>(q.d));
  return std::min(q.B / std::log(q.T), capped);
}

namespace formulas {

double small_d_lower(int d, double T) {
  return 0.5 * d * std::log(T / static_cast<double>(d));
}

BoundBranch linf_lower(const BoundQuery& q) {
  const double d = q.d;
  if (q.d <= 1) return {"small-d", small_d_lower(q.d, q.T)};
  const double g = gamma_effective(q);
  const double te = t_eff(q);
  if (d < (4.0 / kE) * g * te) {
    return {"linf-log", 0.5 * d * std::log(4.0 * g * q.T / d)};
  }
  return {"linf-plateau", (2.0 / kE) * g * te};
}

BoundBranch l2_lower(const BoundQuery& q) {
  const double d = q.d;
  if (q.d <= 1) return {"small-d", small_d_lower(q.d, q.T)};
  const double g = gamma_effective(q);
  const double te = t_eff(q);
  const double plateau = std::sqrt((kTwoPi / kE) * g * te);
  if (d < plateau) {
    return {"l2-log", 0.5 * d * std::log(kTwoPi * kE * g * q.T / (d * d))};
  }
  return {"l2-plateau", plateau};
}

BoundBranch l1_lower(const BoundQuery& q) {
  const double d = q.d;
  if (q.d <= 1) return {"small-d", small_d_lower(q.d, q.T)};
  const double g = gamma_effective(q);
  const double te = t_eff(q);
  const double edge = std::cbrt(4.0 * g * te / kE);
  if (d < edge) {
    return {"l1-log", 0.5 * d * std::log(4.0 * kE * kE * g * q.T / (d * d * d))};
  }
  return {"l1-plateau", 1.5 * edge};
}

double linf_upper(int d, double T, double B) {
  return 0.5 * d * std::log(B * B * T * kE / 4.0 + kE);
}

double l2_upper(int d, double T, double B) {
  return 0.5 * d * std::log(B * B * T * kE / (4.0 * d) + kE);
}

double l1_log_upper(int d, double T, double B) {
  return 0.5 * d * std::log(B * B * T * kE * kE * kE / (4.0 * static_cast<double>(d) * d));
}

double l1_crossover_upper(int d, double T, double B) {
  return 0.5 * d * std::log(4.0 * kE) + B * std::sqrt(T) / 2.0;
}

double l1_large_upper(int d, double T, double B) {
  return 0.5 * d + std::sqrt(2.0 * d * B * std::sqrt(T));
}

double l1_sublinear_upper(int d, double T, double B) {
  return 1.25 * std::pow(2.0, 0.6) * std::pow(B, 0.4) *
         std::pow(static_cast<double>(d), 0.6) * std::pow(T, 0.2);
}

}  // namespace formulas

namespace {

BoundBranch lower_family(const BoundQuery& q) {
  switch (q.norm) {
    case Norm::l1: return formulas::l1_lower(q);
    case Norm::l2: return formulas::l2_lower(q);
    case Norm::linf: return formulas::linf_lower(q);
  }
  return {};
}

BoundBranch upper_family(const BoundQuery& q) {
  const int d = q.d;
  const double T = q.T;
  const double B = q.B;
  switch (q.norm) {
    case Norm::linf:
      return {"linf-log", formulas::linf_upper(d, T, B)};
    case Norm::l2:
      return {"l2-log", formulas::l2_upper(d, T, B)};
    case Norm::l1: {
      const double bs = B * std::sqrt(T);
      if (d < bs) return {"l1-log", formulas::l1_log_upper(d, T, B)};
      // Validity edge of the log branch, reachable from any d >= B sqrt(T)
      // by padding the run with zero-feature rounds out to a longer horizon.
      BoundBranch best{"l1-edge-cap", 0.5 * d * std::log(kE * kE * kE / 4.0)};
      auto consider = [&best](const char* label, double value) {
        if (value < best.nats) best = {label, value};
      };
      if (d == bs) {
        consider("l1-crossover", formulas::l1_crossover_upper(d, T, B));
      } else {
        consider("l1-large", formulas::l1_large_upper(d, T, B));
        consider("l1-sublinear", formulas::l1_sublinear_upper(d, T, B));
      }
      return best;
    }
  }
  return {};
}

}  // namespace

BoundBranch lower_bound(const BoundQuery& q) {
  validate_query(q);
  // A lower bound proven for a comparator class contained in the queried
  // ball stays valid for the ball itself, so the families stack.
  BoundBranch best = lower_family(with_norm(q, Norm::l1));
  if (q.norm == Norm::l2 || q.norm == Norm::linf) {
    BoundBranch b = lower_family(with_norm(q, Norm::l2));
    if (b.nats > best.nats) best = b;
  }
  if (q.norm == Norm::linf) {
    BoundBranch b = lower_family(with_norm(q, Norm::linf));
    if (b.nats > best.nats) best = b;
  }
  return best;
}

BoundBranch upper_bound(const BoundQuery& q) {
  validate_query(q);
  // Mirror image: an upper bound for a containing class holds for the
  // contained one.
  BoundBranch best = upper_family(with_norm(q, Norm::linf));
  if (q.norm == Norm::l2 || q.norm == Norm::l1) {
    BoundBranch b = upper_family(with_norm(q, Norm::l2));
    if (b.nats < best.nats) best = b;
  }
  if (q.norm == Norm::l1) {
    BoundBranch b = upper_family(with_norm(q, Norm::l1));
    if (b.nats < best.nats) best = b;
  }
  return best;
}

double grid_mixture_regret_bound(std::size_t M, int d, double T, double spacing_eps) {
  if (M < 1) throw std::invalid_argument("grid cardinality must be >= 1");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (!(T >= 0.0)) throw std::invalid_argument("T must be nonnegative");
  if (!(spacing_eps >= 0.0)) throw std::invalid_argument("spacing must be nonnegative");
  return std::log(static_cast<double>(M)) + d * T * spacing_eps * spacing_eps / 32.0;
}

double gaussian_prior_variance(const NormConstraint& constraint, int d) {
  validate_constraint(constraint);
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  switch (constraint.norm) {
    case Norm::linf: return constraint.radius * constraint.radius;
    case Norm::l2: return constraint.radius * constraint.radius / d;
    case Norm::l1:
      throw std::invalid_argument(
          "no worst-case Gaussian prior variance for l1; use the lattice grid "
          "construction");
  }
  return 0.0;
}

double gaussian_induced_spacing_sq(double nu_sq, double T) {
  if (!(nu_sq > 0.0)) throw std::invalid_argument("variance must be positive");
  if (!(T >= 1.0)) throw std::invalid_argument("T must be >= 1");
  return 4.0 * nu_sq / (4.0 + T * nu_sq);
}

double multilabel_lower_bound(int d, int m, double T) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  if (!(T > static_cast<double>(m) * d)) {
    throw std::invalid_argument("need T > m*d for a positive logarithm");
  }
  return 0.5 * d * (m - 1) * std::log(T / (static_cast<double>(m) * d));
}

std::string classify_region(const BoundQuery& q) {
  validate_query(q);
  const double g = gamma_effective(q);
  const double d = q.d;
  switch (q.norm) {
    case Norm::l1:
      if (d < std::cbrt(g * q.T)) return "row1";
      if (d < q.B * std::sqrt(q.T)) return "row2";
      return "row3";
    case Norm::l2:
      if (d < std::sqrt(g * q.T)) return "row4";
      if (d < q.B * q.B * q.T) return "row5";
      return "row6";
    case Norm::linf:
      if (d < g * q.T) return "row7";
      return "row8";
  }
  return "?";
}

BoundReport evaluate_bounds(const BoundQuery& q) {
  BoundReport rep;
  rep.gamma = gamma_effective(q);
  rep.region_label = classify_region(q);
  BoundBranch lo = lower_bound(q);
  BoundBranch hi = upper_bound(q);
  rep.lower_region = lo.label;
  rep.upper_region = hi.label;
  rep.lower_nats = lo.nats;
  rep.upper_nats = hi.nats;
  return rep;
}

}  // namespace regretlab
