#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "regretlab/bounds.hpp"

using namespace regretlab;

namespace {
constexpr double kE = 2.718281828459045235;
}

TEST_CASE("effective gamma") {
  // B = ln T with small d: the first argument wins and equals 1
  BoundQuery q1{2, std::exp(6.0), 6.0, Norm::linf, 0.0, true};
  CHECK(gamma_effective(q1) == doctest::Approx(1.0).epsilon(1e-12));

  BoundQuery q2{10, std::exp(10.0), 20.0, Norm::linf, 0.1, true};
  CHECK(gamma_effective(q2) == doctest::Approx(2.0).epsilon(1e-9));

  // d at least T^(1-eps): the second argument collapses to 1
  BoundQuery q3{4096, 64.0, 100.0, Norm::l2, 0.0, true};
  CHECK(gamma_effective(q3) ==
        doctest::Approx(std::min(100.0 / std::log(64.0), 1.0)).epsilon(1e-12));
  BoundQuery q4{4096, 64.0, 0.5, Norm::l2, 0.0, true};
  CHECK(gamma_effective(q4) == doctest::Approx(0.5 / std::log(64.0)).epsilon(1e-12));
}

TEST_CASE("lower bound worked values") {
  // d = 1 uses the dimension-count branch for every norm
  for (Norm n : {Norm::l1, Norm::l2, Norm::linf}) {
    BoundQuery q{1, std::exp(8.0), 1.0, n, 0.0, true};
    auto b = lower_bound(q);
    CHECK(b.nats == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(b.label == "small-d");
  }

  // linf plateau: value independent of d once past the threshold
  BoundQuery qa{136, 256.0, 2.0, Norm::linf, 0.0, true};
  BoundQuery qb{200, 256.0, 2.0, Norm::linf, 0.0, true};
  auto ba = lower_bound(qa);
  auto bb = lower_bound(qb);
  CHECK(ba.label == "linf-plateau");
  CHECK(bb.label == "linf-plateau");
  CHECK(ba.nats == doctest::Approx(bb.nats).epsilon(1e-12));
  const double g = gamma_effective(qa);
  CHECK(ba.nats == doctest::Approx((2.0 / kE) * g * 256.0).epsilon(1e-12));
}

TEST_CASE("every lower-bound family meets its plateau continuously") {
  // at the threshold d the logarithmic branch equals the plateau value
  BoundQuery q{8, 4096.0, 8.0, Norm::linf, 0.0, true};
  const double g = gamma_effective(q);

  // linf: log branch at d = (4/e) g T equals (d/2) ln e = d/2 = plateau
  const double d_inf = (4.0 / kE) * g * q.T;
  const double log_branch_inf = 0.5 * d_inf * std::log(4.0 * g * q.T / d_inf);
  CHECK(log_branch_inf == doctest::Approx((2.0 / kE) * g * q.T).epsilon(1e-12));

  // l1: log branch at d = (4 g T / e)^(1/3) equals (3/2) d = plateau
  const double d_l1 = std::cbrt(4.0 * g * q.T / kE);
  const double log_branch_l1 =
      0.5 * d_l1 * std::log(4.0 * kE * kE * g * q.T / (d_l1 * d_l1 * d_l1));
  CHECK(log_branch_l1 == doctest::Approx(1.5 * d_l1).epsilon(1e-12));

  // l2: log branch at d = sqrt(2 pi g T / e) equals d = plateau
  const double d_l2 = std::sqrt(2.0 * M_PI / kE * g * q.T);
  const double log_branch_l2 =
      0.5 * d_l2 * std::log(2.0 * M_PI * kE * g * q.T / (d_l2 * d_l2));
  CHECK(log_branch_l2 == doctest::Approx(d_l2).epsilon(1e-12));
}

TEST_CASE("upper bound worked values") {
  BoundQuery q{2, 100.0, 1.0, Norm::linf, 0.0, true};
  auto b = upper_bound(q);
  CHECK(b.nats == doctest::Approx(std::log(26.0) + 1.0).epsilon(1e-12));
  CHECK(b.label == "linf-log");

  // the l2 formula never exceeds the linf one
  for (int d : {1, 2, 8, 64}) {
    for (double T : {16.0, 1024.0}) {
      BoundQuery l2q{d, T, 1.0, Norm::l2, 0.0, true};
      BoundQuery liq{d, T, 1.0, Norm::linf, 0.0, true};
      CHECK(upper_bound(l2q).nats <= upper_bound(liq).nats + 1e-12);
    }
  }
}

TEST_CASE("raw branch transcriptions") {
  // crossover branch at d = B sqrt(T): (d/2) ln(4e) + B sqrt(T) / 2
  CHECK(formulas::l1_crossover_upper(8, 64.0, 1.0) ==
        doctest::Approx(4.0 * std::log(4.0 * kE) + 4.0).epsilon(1e-12));
  // large-d branch: d/2 + sqrt(2 d B sqrt(T))
  CHECK(formulas::l1_large_upper(32, 256.0, 0.5) ==
        doctest::Approx(16.0 + std::sqrt(2.0 * 32.0 * 8.0)).epsilon(1e-12));
  // sublinear branch constant (5/4) 2^(3/5)
  CHECK(formulas::l1_sublinear_upper(1, 1.0, 1.0) ==
        doctest::Approx(1.25 * std::pow(2.0, 0.6)).epsilon(1e-12));
  // log branch
  CHECK(formulas::l1_log_upper(2, 100.0, 1.0) ==
        doctest::Approx(std::log(100.0 * kE * kE * kE / 16.0)).epsilon(1e-12));
}

TEST_CASE("grid mixture budget formula") {
  CHECK(grid_mixture_regret_bound(1, 1, 16.0, 0.0) == 0.0);
  CHECK(grid_mixture_regret_bound(37, 2, 64.0, 0.5) ==
        doctest::Approx(std::log(37.0) + 1.0).epsilon(1e-12));
  // default spacing 4/sqrt(T) makes the quantization term d/2 exactly
  for (int d : {1, 2, 3}) {
    for (double T : {8.0, 500.0, 4096.0}) {
      const double eps = 4.0 / std::sqrt(T);
      CHECK(grid_mixture_regret_bound(100, d, T, eps) ==
            doctest::Approx(std::log(100.0) + d / 2.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("gaussian prior variance and induced spacing") {
  CHECK(gaussian_prior_variance({Norm::linf, 1.0}, 3) == doctest::Approx(1.0));
  CHECK(gaussian_prior_variance({Norm::l2, 1.0}, 4) == doctest::Approx(0.25));
  CHECK_THROWS_AS(gaussian_prior_variance({Norm::l1, 1.0}, 2), std::invalid_argument);
  CHECK(gaussian_induced_spacing_sq(1.0, 4.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("multi-label lower bound") {
  CHECK(multilabel_lower_bound(1, 3, 300.0) == doctest::Approx(std::log(100.0)).epsilon(1e-12));
  // m = 2 reduces to (d/2) ln(T/(2d))
  CHECK(multilabel_lower_bound(4, 2, 1024.0) ==
        doctest::Approx(2.0 * std::log(1024.0 / 8.0)).epsilon(1e-12));
  // T = m d e gives d(m-1)/2
  CHECK(multilabel_lower_bound(2, 3, 6.0 * kE) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(multilabel_lower_bound(2, 3, 6.0), std::invalid_argument);
  CHECK_THROWS_AS(multilabel_lower_bound(2, 1, 100.0), std::invalid_argument);
}

TEST_CASE("region classification") {
  BoundQuery small{1, 1e6, 1.0, Norm::l1, 0.0, true};
  CHECK(classify_region(small) == "row1");

  BoundQuery plateau{64, 16.0, 0.5, Norm::l2, 0.0, true};  // d > B^2 T = 4
  CHECK(classify_region(plateau) == "row6");

  // boundary-exact d goes to the larger-d row
  BoundQuery edge{8, 64.0, 1.0, Norm::l1, 0.0, true};  // d == B sqrt(T)
  CHECK(classify_region(edge) == "row3");

  BoundQuery tall{4096, 64.0, 0.5, Norm::linf, 0.0, true};
  CHECK(classify_region(tall) == "row8");
}

TEST_CASE("nesting and T-monotonicity over the regression sweep") {
  const std::vector<double> Ts = [] {
    std::vector<double> v;
    for (int k = 4; k <= 20; ++k) v.push_back(std::pow(2.0, k));
    return v;
  }();
  for (int d = 1; d <= 64; ++d) {
    for (double B : {0.5, 1.0, 2.0, 8.0}) {
      double prev_lower[3] = {-1e300, -1e300, -1e300};
      double prev_upper[3] = {-1e300, -1e300, -1e300};
      for (double T : Ts) {
        double lower[3], upper[3];
        int i = 0;
        for (Norm n : {Norm::l1, Norm::l2, Norm::linf}) {
          BoundQuery q{d, T, B, n, 0.0, true};
          lower[i] = lower_bound(q).nats;
          upper[i] = upper_bound(q).nats;
          ++i;
        }
        CHECK(lower[0] <= lower[1] + 1e-12);
        CHECK(lower[1] <= lower[2] + 1e-12);
        CHECK(upper[0] <= upper[1] + 1e-12);
        CHECK(upper[1] <= upper[2] + 1e-12);
        for (int j = 0; j < 3; ++j) {
          CHECK(lower[j] >= prev_lower[j] - 1e-9);
          CHECK(upper[j] >= prev_upper[j] - 1e-9);
          prev_lower[j] = lower[j];
          prev_upper[j] = upper[j];
        }
      }
    }
  }
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(validate_query({0, 16.0, 1.0, Norm::l1, 0.0, true}), std::invalid_argument);
  CHECK_THROWS_AS(validate_query({1, 1.0, 1.0, Norm::l1, 0.0, true}), std::invalid_argument);
  CHECK_THROWS_AS(validate_query({1, 16.0, 0.0, Norm::l1, 0.0, true}), std::invalid_argument);
  CHECK_THROWS_AS(validate_query({1, 16.0, 1.0, Norm::l1, 1.0, true}), std::invalid_argument);
}

TEST_CASE("full report is assembled consistently") {
  BoundQuery q{2, 100.0, 1.0, Norm::linf, 0.0, true};
  auto rep = evaluate_bounds(q);
  CHECK(rep.gamma == doctest::Approx(gamma_effective(q)).epsilon(1e-15));
  CHECK(rep.upper_nats == doctest::Approx(upper_bound(q).nats).epsilon(1e-15));
  CHECK(rep.lower_nats == doctest::Approx(lower_bound(q).nats).epsilon(1e-15));
  CHECK(rep.region_label == "row7");
}
