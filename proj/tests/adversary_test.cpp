#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "regretlab/adversary.hpp"
#include "regretlab/logistic.hpp"
#include "regretlab/rng.hpp"

using namespace regretlab;

TEST_CASE("plain design layout") {
  auto d2 = build_design(2, 4);
  REQUIRE(d2.horizon == 4);
  CHECK(std::vector<double>(d2.row(0).begin(), d2.row(0).end()) == std::vector<double>{1, 0});
  CHECK(std::vector<double>(d2.row(1).begin(), d2.row(1).end()) == std::vector<double>{1, 0});
  CHECK(std::vector<double>(d2.row(2).begin(), d2.row(2).end()) == std::vector<double>{0, 1});
  CHECK(std::vector<double>(d2.row(3).begin(), d2.row(3).end()) == std::vector<double>{0, 1});

  auto d1 = build_design(1, 5);
  for (int t = 0; t < 5; ++t) CHECK(d1.row(t)[0] == 1.0);

  // leftover rounds are zero
  auto d3 = build_design(2, 5);
  CHECK(d3.row(4)[0] == 0.0);
  CHECK(d3.row(4)[1] == 0.0);
}

TEST_CASE("scaled design layout") {
  auto d = build_design(2, 6, 1);
  std::vector<std::vector<double>> expect{{-1, 1}, {-1, 1}, {0, 1}, {0, 1}, {1, 1}, {1, 1}};
  for (int t = 0; t < 6; ++t) {
    CHECK(std::vector<double>(d.row(t).begin(), d.row(t).end()) == expect[static_cast<std::size_t>(t)]);
  }
}

TEST_CASE("designs respect the feature bound and segment pattern") {
  for (auto [dd, T, g] : {std::tuple<int, std::int64_t, int>{3, 50, 0},
                          {3, 64, 1},
                          {4, 100, 2}}) {
    auto design = build_design(dd, T, g > 0 ? std::optional<int>(g) : std::nullopt);
    for (std::int64_t t = 0; t < T; ++t) {
      auto row = design.row(t);
      int nonzero_tail = 0;
      for (int j = g > 0 ? 1 : 0; j < dd; ++j) {
        CHECK(std::fabs(row[j]) <= 1.0);
        if (row[j] != 0.0) {
          ++nonzero_tail;
          CHECK(row[j] == 1.0);
        }
      }
      CHECK(nonzero_tail <= 1);
      if (g > 0) CHECK(std::fabs(row[0]) <= 1.0);
    }
  }
}

TEST_CASE("infeasible designs are rejected") {
  CHECK_THROWS_AS(build_design(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_design(3, 5, 1), std::invalid_argument);  // needs (d-1)(2g+1)=6
  CHECK_THROWS_AS(build_design(1, 10, 1), std::invalid_argument);  // scaled needs d >= 2
}

TEST_CASE("plain theory grid probabilities") {
  auto design = build_design(1, 16);
  auto grid = build_theory_grid(design, TheoryGridRule::plain, 0.0);
  // delta = 1/4: probabilities {0, .25, .5, .75, 1} with the endpoints
  // clipped to 1/(2T) and 1 - 1/(2T)
  REQUIRE(grid.size() == 5);
  const double floor_p = 1.0 / 32.0;
  std::vector<double> expect_p{floor_p, 0.25, 0.5, 0.75, 1.0 - floor_p};
  for (std::size_t i = 0; i < 5; ++i) {
    const double p = sigmoid(grid.point(i)[0]);
    CHECK(p == doctest::Approx(expect_p[i]).epsilon(1e-12));
  }
  // interior spacing is delta everywhere
  for (std::size_t i = 2; i < 4; ++i) {
    CHECK(sigmoid(grid.point(i)[0]) - sigmoid(grid.point(i - 1)[0]) ==
          doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("theory grid cardinality is the per-dimension count to the power d") {
  auto design = build_design(2, 64);
  auto grid = build_theory_grid(design, TheoryGridRule::plain, 0.0);
  const double delta = std::sqrt(2.0 / 64.0);
  const auto k = static_cast<std::size_t>(std::floor(1.0 / delta));
  CHECK(grid.size() == (k + 1) * (k + 1));

  auto overridden = build_theory_grid(design, TheoryGridRule::plain, 0.0, 3);
  CHECK(overridden.size() == 9);
}

TEST_CASE("scaled theory grid pins the first coordinate and drops extremes") {
  auto design = build_design(2, 512, 1);
  auto grid = build_theory_grid(design, TheoryGridRule::scaled, 0.0);
  const double delta = std::sqrt(2.0 * 1.0 / 512.0);
  const auto k = static_cast<std::int64_t>(std::floor(1.0 / delta));
  CHECK(grid.size() == static_cast<std::size_t>(3 * (k - 1)));
  const double logT = std::log(512.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid.point(i)[0] == doctest::Approx(logT).epsilon(1e-12));
  }
  // sub-grid s shifts by -s log T; probabilities stay interior
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double psi = grid.point(i)[1];
    bool in_some_subgrid = false;
    for (int s = -1; s <= 1; ++s) {
      const double p = sigmoid(psi + s * logT);
      if (p > delta / 2 && p < 1.0 - delta / 2) in_some_subgrid = true;
    }
    CHECK(in_some_subgrid);
  }
  CHECK_THROWS_AS(build_theory_grid(design, TheoryGridRule::scaled, 0.0, 5),
                  std::invalid_argument);
  auto plain = build_design(2, 64);
  CHECK_THROWS_AS(build_theory_grid(plain, TheoryGridRule::scaled, 0.0),
                  std::invalid_argument);
}

TEST_CASE("sampling is seeded and unbiased at the coin-flip point") {
  auto design = build_design(1, 16);
  auto grid = build_theory_grid(design, TheoryGridRule::plain, 0.0);

  auto a = sample_and_label(design, grid, 12345);
  auto b = sample_and_label(design, grid, 12345);
  CHECK(a.theta_index == b.theta_index);
  for (std::size_t t = 0; t < a.sequence.size(); ++t) {
    CHECK(a.sequence[t].label == b.sequence[t].label);
  }

  // theta with zero dot product: labels are fair coin flips
  auto single = ParamGrid::from_points(1, {{0.0}}, "zero");
  std::int64_t pos = 0;
  const std::int64_t n = 100'000;
  auto wide = build_design(1, 1);
  for (std::int64_t i = 0; i < n / wide.horizon; ++i) {
    auto inst = sample_and_label(wide, single, Rng::derive(999, static_cast<std::uint64_t>(i)));
    for (const auto& ex : inst.sequence) pos += ex.label == 1;
  }
  const double mean = static_cast<double>(pos) / static_cast<double>(n);
  CHECK(std::fabs(mean - 0.5) <= 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("maximum-likelihood identification") {
  auto grid = ParamGrid::from_points(1, {{-1.0}, {1.0}}, "pair");

  // empty sequence ties; lowest index wins
  std::vector<LabeledExample> empty;
  CHECK(ml_identify_index(grid, empty) == 0);

  std::vector<LabeledExample> pos(10, LabeledExample({1.0}, 1));
  CHECK(ml_identify(grid, pos) == ParamVector{1.0});

  // argmax beats every other grid point
  auto design = build_design(1, 12);
  auto g5 = build_theory_grid(design, TheoryGridRule::plain, 0.0, 5);
  auto inst = sample_and_label(design, g5, 777);
  const std::size_t best = ml_identify_index(g5, inst.sequence);
  const double best_ll = -cumulative_loss(ml_identify(g5, inst.sequence), inst.sequence);
  for (std::size_t i = 0; i < g5.size(); ++i) {
    auto pt = g5.point(i);
    CHECK(best_ll >= -cumulative_loss({pt[0]}, inst.sequence) - 1e-12);
  }
  CHECK(best < g5.size());
}

TEST_CASE("misidentification estimates") {
  // singleton grid: identification never fails, bound reports -1
  auto design1 = build_design(1, 8);
  auto single = ParamGrid::from_points(1, {{0.5}}, "singleton");
  auto rep = estimate_pe(design1, single, 200, 5);
  CHECK(rep.error_rate_pe == 0.0);
  CHECK(rep.expected_regret_lower == doctest::Approx(-1.0).epsilon(1e-12));

  // well separated pair at T=100 is identified almost always
  auto design100 = build_design(1, 100);
  auto pair = ParamGrid::from_points(1, {{-1.0}, {1.0}}, "pair");
  auto rep2 = estimate_pe(design100, pair, 1000, 7);
  CHECK(rep2.error_rate_pe < 0.05);
  CHECK(rep2.grid_cardinality_M == 2);
  CHECK(rep2.trials == 1000);
}

TEST_CASE("monte carlo matches exhaustive enumeration on short horizons") {
  for (std::int64_t T : {8, 12}) {
    auto design = build_design(1, T);
    auto pair = build_theory_grid(design, TheoryGridRule::plain, 0.0, 2);
    const double exact = oracles::exact_pe(design, pair);
    auto rep = estimate_pe(design, pair, 10'000, 31);
    const double sigma = std::sqrt(std::max(exact * (1.0 - exact), 1e-12) / 10'000.0);
    CHECK(std::fabs(rep.error_rate_pe - exact) <= 3.0 * sigma + 1e-9);
  }
}

TEST_CASE("error rate is nonincreasing in the horizon") {
  auto base_design = build_design(1, 64);
  auto grid = build_theory_grid(base_design, TheoryGridRule::plain, 0.0, 5);
  double prev = 1.0, prev_sigma = 0.0;
  for (std::int64_t T : {64, 256, 1024}) {
    auto design = build_design(1, T);
    auto rep = estimate_pe(design, grid, 3000, 11);
    const double sigma =
        std::sqrt(std::max(rep.error_rate_pe * (1.0 - rep.error_rate_pe), 1e-9) / 3000.0);
    CHECK(rep.error_rate_pe <= prev + 2.0 * std::sqrt(sigma * sigma + prev_sigma * prev_sigma));
    prev = rep.error_rate_pe;
    prev_sigma = sigma;
  }
}

TEST_CASE("capacity experiment") {
  // mixture on the same grid sits above the bound
  for (auto [dd, T] : {std::pair<int, std::int64_t>{1, 256}, {2, 128}}) {
    auto design = build_design(dd, T);
    auto grid = build_theory_grid(design, TheoryGridRule::plain, 0.0, 5);
    auto alg = make_grid_mixture(grid, PriorSpec::Uniform());
    auto rep = capacity_experiment(alg, design, grid, 400, 13);
    CHECK_FALSE(rep.violation);
    CHECK(rep.measured_expected_regret >= rep.bound - 3.0 * rep.std_error);
    CHECK(rep.grid_cardinality_M == grid.size());
  }

  // singleton grid: the oracle knows the model, regret is identically zero
  auto design = build_design(1, 32);
  auto single = ParamGrid::from_points(1, {{0.7}}, "singleton");
  auto alg = make_grid_mixture(single, PriorSpec::Uniform());
  auto rep = capacity_experiment(alg, design, single, 50, 3);
  CHECK(std::fabs(rep.measured_expected_regret) <= 1e-9);
  CHECK(rep.bound == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_FALSE(rep.violation);

  // two-point grid: the bound is negative (vacuous) but still reported
  auto pair = ParamGrid::from_points(1, {{-1.0}, {1.0}}, "pair");
  auto design100 = build_design(1, 100);
  auto alg2 = make_grid_mixture(pair, PriorSpec::Uniform());
  auto rep2 = capacity_experiment(alg2, design100, pair, 200, 5);
  CHECK(rep2.bound ==
        doctest::Approx((1.0 - rep2.error_rate_pe) * std::log(2.0) - 1.0).epsilon(1e-12));
  CHECK(rep2.bound < 0.0);
  CHECK_FALSE(rep2.violation);
}

TEST_CASE("identical seeds give identical reports") {
  auto design = build_design(1, 64);
  auto grid = build_theory_grid(design, TheoryGridRule::plain, 0.0, 5);
  auto r1 = estimate_pe(design, grid, 500, 99);
  auto r2 = estimate_pe(design, grid, 500, 99);
  CHECK(r1.error_rate_pe == r2.error_rate_pe);
  CHECK(r1.expected_regret_lower == r2.expected_regret_lower);
}
