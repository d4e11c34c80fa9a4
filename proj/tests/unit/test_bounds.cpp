#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sdpfeas/bounds.hpp"
#include "sdpfeas/errors.hpp"

using namespace sdpfeas;

TEST_CASE("kernel at known points") {
  const auto r = chernoff_lower_tail(5.0, 2.0);
  REQUIRE(r.valid());
  CHECK(r.delta == doctest::Approx(0.6));
  CHECK(r.log_bound == doctest::Approx(-0.9).epsilon(1e-15));
  CHECK(r.bound == doctest::Approx(0.4065696597405991).epsilon(1e-15));

  const auto zero = chernoff_lower_tail(5.0, 0.0);
  REQUIRE(zero.valid());
  CHECK(zero.delta == 1.0);
  CHECK(zero.log_bound == doctest::Approx(-2.5));
}

TEST_CASE("out of regime carries no bound") {
  for (double c : {5.0, 5.0000001, 7.0, -0.1}) {
    const auto r = chernoff_lower_tail(5.0, c);
    CHECK(r.regime == Regime::OutOfRegime);
    CHECK_FALSE(r.valid());
  }
}

TEST_CASE("theorem tags by family and kind") {
  const SdpOutcome o(200, 0.1);
  struct Case {
    HazardModel model;
    TheoremTag hazard;
    TheoremTag reliability;
  };
  const Case cases[] = {
      {HazardModel::weibull(1.0, 0.5), TheoremTag::Theorem1, TheoremTag::Theorem2},
      {HazardModel::non_linear_decreasing(1.0), TheoremTag::Corollary1, TheoremTag::Corollary2},
      {HazardModel::linear_decreasing(3.0, 0.1), TheoremTag::Corollary3, TheoremTag::Corollary4},
      {HazardModel::non_linear_increasing(1.0), TheoremTag::Corollary5, TheoremTag::Corollary6},
      {HazardModel::linear_increasing(1.0), TheoremTag::Corollary7, TheoremTag::Corollary8},
      {HazardModel::constant(1.0), TheoremTag::Corollary9, TheoremTag::Corollary10},
  };
  for (const auto& c : cases) {
    CHECK(hazard_bound(o, c.model, 1.0).theorem == c.hazard);
    CHECK(reliability_bound(o, c.model, 1.0).theorem == c.reliability);
  }
  CHECK(std::string(to_string(TheoremTag::Corollary10)) == "corollary10");
  CHECK(std::string(to_string(TheoremTag::Theorem3)) == "theorem3");
}

TEST_CASE("worked constant-hazard example") {
  const SdpOutcome o(100, 0.05);
  const auto h = hazard_bound(o, HazardModel::constant(2.0), 1.0);
  REQUIRE(h.valid());
  CHECK(h.mu == doctest::Approx(5.0));
  CHECK(h.bound == doctest::Approx(0.4065696597405991).epsilon(1e-14));

  // mu_R = exp(5 (e^-1 - 1)) = 0.04240017...; threshold lambda = 0.02.
  const auto r = reliability_bound(o, HazardModel::constant(0.02), 1.0);
  REQUIRE(r.valid());
  CHECK(r.mu == doctest::Approx(0.04240017479866122).epsilon(1e-14));
  CHECK(r.bound == doctest::Approx(0.9941004221733092).epsilon(1e-13));
}

TEST_CASE("Y variant requires Weibull and the right outcome") {
  const SdpOutcome x(100, 0.05);
  const SdpOutcome y(100, 0.05, WeibullInjection{1.0, 0.0});
  CHECK_THROWS_AS(hazard_bound_y(x, HazardModel::weibull(1.0, 0.0), 1.0), WrongVariant);
  CHECK_THROWS_AS(hazard_bound(y, HazardModel::weibull(1.0, 0.0), 1.0), WrongVariant);
  CHECK_THROWS_AS(hazard_bound_y(y, HazardModel::constant(1.0), 1.0), InvalidInput);

  const auto as_pub = reliability_bound_y(y, HazardModel::weibull(0.02, 0.0), 1.0,
                                          SignMode::AsPublished);
  REQUIRE(as_pub.valid());
  CHECK(as_pub.sign_mode == SignMode::AsPublished);
  CHECK(as_pub.log_bound == doctest::Approx(-2692.5784199933907).epsilon(1e-12));
  CHECK(as_pub.bound == 0.0);
}

TEST_CASE("dispatch matches the direct calls") {
  const SdpOutcome y(50, 0.2, WeibullInjection{0.5, 0.3});
  const auto m = HazardModel::weibull(0.3, 0.2);
  const auto a = compute_bound(y, m, 2.0, BoundKind::Reliability, Variant::Y);
  const auto b = reliability_bound_y(y, m, 2.0, SignMode::Corrected);
  CHECK(a.log_bound == b.log_bound);
  CHECK(a.theorem == TheoremTag::Theorem4);
}

TEST_CASE("sweep is independent of thread count") {
  const SdpOutcome o(500, 0.03);
  const auto m = HazardModel::weibull(0.8, 0.7);
  std::vector<double> grid;
  for (int i = 1; i <= 257; ++i) grid.push_back(0.01 * i);
  const auto one = bound_sweep(o, m, grid, BoundKind::Hazard, Variant::X, SignMode::Corrected, 1);
  const auto four = bound_sweep(o, m, grid, BoundKind::Hazard, Variant::X, SignMode::Corrected, 4);
  REQUIRE(one.size() == grid.size());
  REQUIRE(four.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(one[i].t == grid[i]);
    CHECK(one[i].regime == four[i].regime);
    CHECK(one[i].log_bound == four[i].log_bound);
  }
}

TEST_CASE("sweep grid validation and domain errors") {
  const SdpOutcome o(100, 0.05);
  const auto c = HazardModel::constant(1.0);
  std::vector<double> empty;
  std::vector<double> unsorted = {1.0, 0.5};
  std::vector<double> nonpos = {0.0, 1.0};
  CHECK_THROWS_AS(bound_sweep(o, c, empty, BoundKind::Hazard, Variant::X), InvalidInput);
  CHECK_THROWS_AS(bound_sweep(o, c, unsorted, BoundKind::Hazard, Variant::X), InvalidInput);
  CHECK_THROWS_AS(bound_sweep(o, c, nonpos, BoundKind::Hazard, Variant::X), InvalidInput);

  std::vector<double> beyond = {0.5, 1.0, 2.0, 3.0};
  const auto ld = HazardModel::linear_decreasing(2.0, 1.0);
  CHECK_THROWS_AS(bound_sweep(o, ld, beyond, BoundKind::Hazard, Variant::X, SignMode::Corrected, 3),
                  DomainError);
}

TEST_CASE("kernel matches printed forms") {
  using namespace testing::printed;
  const SdpOutcome o(300, 0.07);
  const double t = 0.8;
  auto near = [](const BoundResult& r, double printed) {
    REQUIRE(r.valid());
    return testing::relative_error(r.bound, printed) <= 1e-12;
  };
  CHECK(near(hazard_bound(o, HazardModel::weibull(1.5, 0.4), t), theorem1(300, 0.07, 1.5, 0.4, t)));
  CHECK(near(hazard_bound(o, HazardModel::non_linear_decreasing(2.0), t),
             corollary1(300, 0.07, 2.0, t)));
  CHECK(near(hazard_bound(o, HazardModel::linear_decreasing(5.0, 1.0), t),
             corollary3(300, 0.07, 5.0, 1.0, t)));
  CHECK(near(hazard_bound(o, HazardModel::constant(3.0), t), corollary9(300, 0.07, 3.0)));
  CHECK(near(reliability_bound(o, HazardModel::constant(1e-7), t),
             corollary10(300, 0.07, 1e-7, t)));
}

TEST_CASE("reliability expectation below the double range") {
  // l p (e^-t - 1) ~ -1500: exp underflows to zero, the log does not.
  const SdpOutcome o(2000, 0.75);
  const double t = 30.0;
  CHECK(log_expected_reliability_bound_x(o, t) == doctest::Approx(-1500.0).epsilon(1e-12));
  const auto r = reliability_bound(o, HazardModel::constant(1e-3), t);
  CHECK(r.regime == Regime::OutOfRegime);
  CHECK(r.mu == 0.0);

  // log mu ~ -740 (subnormal mu ~ 4e-322); a threshold of two subnormal
  // units is still below it.
  const SdpOutcome sub(1000, 0.74);
  const auto v = reliability_bound(sub, HazardModel::constant(1e-323), t);
  CHECK(v.regime == Regime::Valid);
  CHECK(v.bound == 1.0);
  CHECK(v.log_bound <= 0.0);
}
