#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "affsurf/asp.hpp"
#include "affsurf/errors.hpp"
#include "affsurf/extremal.hpp"
#include "affsurf/geometry.hpp"
#include "affsurf/util.hpp"

using namespace affsurf;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ConvexBody unit_square() { return make_cube(2); }

// Centered ellipse x^2/4 + y^2 <= 1 (semi-axes 2 and 1, area 2 pi).
ConvexBody wide_ellipse() {
  Eigen::Matrix2d shape;
  shape << 0.25, 0.0, 0.0, 1.0;
  return make_ellipsoid(Eigen::Vector2d::Zero(), shape);
}

bool values_nondecreasing(const std::vector<CandidateValue>& log, double slack = 0.0) {
  for (std::size_t i = 0; i + 1 < log.size(); ++i)
    if (log[i + 1].value < log[i].value - slack) return false;
  return true;
}

}  // namespace

TEST_CASE("closed forms at the endpoint exponents") {
  ConvexBody square = unit_square();

  auto is0 = closed_form_extremal(square, ExtremalKind::kInnerMax, 0.0);
  REQUIRE(is0.has_value());
  CHECK(is0->value == doctest::Approx(8.0));
  CHECK_FALSE(is0->infinite);
  REQUIRE(is0->witness.has_value());
  CHECK(volume(*is0->witness) == doctest::Approx(4.0));

  auto isn = closed_form_extremal(square, ExtremalKind::kInnerMax, 2.0);
  REQUIRE(isn.has_value());
  CHECK(isn->value == doctest::Approx(2.0 * kPi));
  REQUIRE(isn->witness.has_value());
  CHECK(isn->witness->kind() == "ball");
  CHECK(asp(*isn->witness, 2.0).value == doctest::Approx(2.0 * kPi));

  auto osn = closed_form_extremal(square, ExtremalKind::kOuterMax, 2.0);
  REQUIRE(osn.has_value());
  CHECK(osn->value == doctest::Approx(2.0 * kPi));
  REQUIRE(osn->witness.has_value());
  CHECK(circumradius_origin(*osn->witness) == doctest::Approx(std::sqrt(2.0)));

  auto os0 = closed_form_extremal(square, ExtremalKind::kOuterMin, 0.0);
  REQUIRE(os0.has_value());
  CHECK(os0->value == doctest::Approx(8.0));
}

TEST_CASE("closed forms report the flagged ranges") {
  ConvexBody square = unit_square();

  for (double p : {3.0, -1.0, -5.0}) {
    auto is = closed_form_extremal(square, ExtremalKind::kInnerMax, p);
    REQUIRE(is.has_value());
    CHECK(is->infinite);
    CHECK(std::isinf(is->value));
    CHECK_FALSE(is->witness.has_value());
  }
  for (double p : {1.0, 0.0, -1.0, -5.0}) {
    auto os = closed_form_extremal(square, ExtremalKind::kOuterMax, p);
    REQUIRE(os.has_value());
    CHECK(os->infinite);
  }

  // The outer infimum vanishes on polytope witnesses for p > 0 and p < -n.
  for (double p : {1.0, 4.0, -3.0}) {
    auto os = closed_form_extremal(square, ExtremalKind::kOuterMin, p);
    REQUIRE(os.has_value());
    CHECK(os->value == 0.0);
    REQUIRE(os->witness.has_value());
    CHECK(asp(*os->witness, p).value == 0.0);
    for (int j = 0; j < 64; ++j) {
      Eigen::VectorXd u = Eigen::Vector2d(std::cos(2.0 * kPi * j / 64), std::sin(2.0 * kPi * j / 64));
      CHECK(support(*os->witness, u) >= support(square, u) - 1e-12);
    }
  }

  // The inner infimum vanishes for every admissible p.
  for (double p : {2.5, 1.0, 0.0, -1.0, -3.0}) {
    auto is = closed_form_extremal(square, ExtremalKind::kInnerMin, p);
    REQUIRE(is.has_value());
    CHECK(is->value == 0.0);
    CHECK_FALSE(is->infinite);
  }

  // At p = -n the surface area itself is undefined; no kind has a value.
  for (auto kind : {ExtremalKind::kInnerMax, ExtremalKind::kOuterMax, ExtremalKind::kOuterMin,
                    ExtremalKind::kInnerMin}) {
    CHECK_FALSE(closed_form_extremal(square, kind, -2.0).has_value());
  }

  // Search ranges are left to the estimators.
  CHECK_FALSE(closed_form_extremal(square, ExtremalKind::kInnerMax, 1.0).has_value());
  CHECK_FALSE(closed_form_extremal(square, ExtremalKind::kOuterMin, -1.0).has_value());
  CHECK_FALSE(closed_form_extremal(square, ExtremalKind::kOuterMax, 4.0).has_value());
}

TEST_CASE("inner supremum search on the disk returns the disk value") {
  ExtremalEstimate est = estimate_IS(make_ball(2, 1.0), 1.0);
  CHECK(est.value == doctest::Approx(2.0 * kPi).epsilon(1e-9));
  CHECK(est.bound_status.pass);
  // The ball is the equality case of the upper bound.
  CHECK(est.bound_status.upper == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  REQUIRE(est.witness.has_value());
}

TEST_CASE("inner supremum search on the square meets the sandwich") {
  ExtremalEstimate est = estimate_IS(unit_square(), 1.0);

  // Certified bracket: inscribed-disk value below, ball bound above.
  CHECK(est.value >= 2.0 * kPi - 1e-9);
  CHECK(est.value <= 2.0 * std::pow(kPi, 2.0 / 3.0) * std::pow(4.0, 1.0 / 3.0) + 1e-9);
  CHECK(est.bound_status.pass);
  CHECK(est.bound_status.lower == doctest::Approx(2.0 * kPi).epsilon(1e-6));
  CHECK(est.bound_status.upper == doctest::Approx(6.81017).epsilon(1e-4));

  // The optimizer lands on the inscribed disk.
  CHECK(est.value == doctest::Approx(2.0 * kPi).epsilon(1e-6));
  REQUIRE(est.witness.has_value());
  CHECK_FALSE(est.candidate_log.empty());
  for (const CandidateValue& cv : est.candidate_log) CHECK(cv.value <= est.value + 1e-9);

  // Every candidate is inscribed: its value never exceeds the ball bound.
  for (const CandidateValue& cv : est.candidate_log)
    CHECK(cv.value <= est.bound_status.upper + 1e-7);
}

TEST_CASE("inner supremum search returns ellipse inputs as their own witness") {
  ExtremalEstimate est = estimate_IS(wide_ellipse(), 1.0);
  const double want = std::pow(2.0, 1.0 / 3.0) * 2.0 * kPi;
  CHECK(est.value == doctest::Approx(want).epsilon(1e-9));
  // Equality case: the estimate meets the isoperimetric upper bound.
  CHECK(std::abs(est.value - est.bound_status.upper) <= 1e-6 * est.value);
  REQUIRE(est.witness.has_value());
  CHECK(est.witness->kind() == "ellipsoid");
  CHECK(asp(*est.witness, 1.0).value == doctest::Approx(est.value).epsilon(1e-12));
}

TEST_CASE("inner supremum search rejects bad inputs") {
  CHECK_THROWS_AS(estimate_IS(unit_square(), 2.5), POutOfRange);
  CHECK_THROWS_AS(estimate_IS(unit_square(), 0.0), POutOfRange);
  CHECK_THROWS_AS(estimate_IS(unit_square(), -0.5), POutOfRange);
  ConvexBody shifted = make_box(Eigen::Vector2d(0.0, -1.0), Eigen::Vector2d(2.0, 1.0),
                                Center::kKeep);
  CHECK_THROWS_AS(estimate_IS(shifted, 1.0), NotCentered);
}

TEST_CASE("spherical cap lower bound sits below the inner supremum estimate") {
  ConvexBody square = unit_square();
  ExtremalEstimate est = estimate_IS(square, 1.0);
  CapBoundDetail detail;
  AspValue cap = asp_cap_lower_bound(square, 1.2, 1.0, 20000, 7, &detail);
  CHECK(cap.value <= est.value + 4.0 * cap.error_estimate + 1e-9);
  CHECK(detail.sigma > 0.0);
}

TEST_CASE("outer infimum search on the disk returns the disk value") {
  ExtremalEstimate est = estimate_os(make_ball(2, 1.0), -1.0);
  CHECK(est.value == doctest::Approx(2.0 * kPi).epsilon(1e-9));
  CHECK(est.bound_status.pass);
  // The ball is the equality case of the lower bound.
  CHECK(est.bound_status.lower == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("outer infimum search on the square uses the circumscribed disk") {
  ExtremalEstimate est = estimate_os(unit_square(), -1.0);

  CHECK(est.value == doctest::Approx(16.0 * kPi).epsilon(1e-4));
  // The construction never beats the true enclosing-ellipse optimum.
  CHECK(est.value >= 16.0 * kPi * (1.0 - 1e-7));
  REQUIRE(est.witness.has_value());
  CHECK(est.witness->kind() == "ellipsoid");

  // Ball sandwich with the symmetric n-power: [128/pi^2, 8 * 128/pi^2].
  CHECK(est.bound_status.lower == doctest::Approx(128.0 / (kPi * kPi)).epsilon(1e-12));
  CHECK(est.bound_status.upper == doctest::Approx(8.0 * 128.0 / (kPi * kPi)).epsilon(1e-12));
  CHECK(est.bound_status.pass);

  // The witness encloses the square.
  for (int j = 0; j < 64; ++j) {
    Eigen::VectorXd u = Eigen::Vector2d(std::cos(2.0 * kPi * j / 64), std::sin(2.0 * kPi * j / 64));
    CHECK(support(*est.witness, u) >= support(unit_square(), u) - 1e-7);
  }
}

TEST_CASE("outer infimum search returns ellipse inputs as their own witness") {
  ExtremalEstimate est = estimate_os(wide_ellipse(), -1.0);
  CHECK(est.value == doctest::Approx(16.0 * kPi).epsilon(1e-9));
  CHECK(std::abs(est.value - est.bound_status.lower) <= 1e-6 * est.value);
  REQUIRE(est.witness.has_value());
  CHECK(est.witness->kind() == "ellipsoid");
}

TEST_CASE("outer infimum search rejects bad inputs") {
  CHECK_THROWS_AS(estimate_os(unit_square(), -2.5), POutOfRange);
  CHECK_THROWS_AS(estimate_os(unit_square(), 0.0), POutOfRange);
  CHECK_THROWS_AS(estimate_os(unit_square(), 0.2), POutOfRange);
}

TEST_CASE("outer supremum search on the disk returns the disk value") {
  ExtremalEstimate est = estimate_OS(make_ball(2, 1.0), 4.0);
  CHECK(est.value == doctest::Approx(2.0 * kPi).epsilon(1e-9));
  CHECK(est.bound_status.pass);
  CHECK(est.bound_status.upper == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("outer supremum search on the square finds the circumscribed disk at p = inf") {
  ExtremalEstimate est = estimate_OS(unit_square(), kInf);

  CHECK(est.value == doctest::Approx(kPi).epsilon(1e-5));
  CHECK(est.bound_status.lower == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-12));
  CHECK(est.bound_status.upper == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-12));
  CHECK(est.bound_status.pass);
  REQUIRE(est.witness.has_value());
  for (const CandidateValue& cv : est.candidate_log) CHECK(cv.value <= est.value + 1e-9);
}

TEST_CASE("outer supremum search returns ellipse inputs as their own witness") {
  ExtremalEstimate est = estimate_OS(wide_ellipse(), 4.0);
  const double want = std::pow(2.0, -1.0 / 3.0) * 2.0 * kPi;
  CHECK(est.value == doctest::Approx(want).epsilon(1e-9));
  CHECK(std::abs(est.value - est.bound_status.upper) <= 1e-6 * est.value);
  REQUIRE(est.witness.has_value());
  CHECK(est.witness->kind() == "ellipsoid");
}

TEST_CASE("outer supremum search rejects bad inputs") {
  CHECK_THROWS_AS(estimate_OS(unit_square(), 1.5), POutOfRange);
  CHECK_THROWS_AS(estimate_OS(unit_square(), 2.0), POutOfRange);
  CHECK_THROWS_AS(estimate_OS(unit_square(), -kInf), POutOfRange);
}

TEST_CASE("estimators are exactly equivariant on ellipse inputs") {
  ConvexBody disk = make_ball(2, 1.0);
  Eigen::Matrix2d T;
  T << 2.0, 0.0, 0.0, 1.0;
  ConvexBody image = apply_affine(AffineMap::linear_only(T), disk);

  const double det = 2.0;
  {
    double lhs = estimate_IS(image, 1.0).value;
    double rhs = std::pow(det, 1.0 / 3.0) * estimate_IS(disk, 1.0).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  {
    double lhs = estimate_os(image, -1.0).value;
    double rhs = std::pow(det, 3.0) * estimate_os(disk, -1.0).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  {
    double lhs = estimate_OS(image, 4.0).value;
    double rhs = std::pow(det, -1.0 / 3.0) * estimate_OS(disk, 4.0).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("inner supremum estimate scales with the two-thirds power in the plane") {
  const double alpha = 2.0;
  AffineMap scale = AffineMap::scaling(2, alpha);
  const double factor = std::pow(alpha, 2.0 / 3.0);

  ConvexBody ellipse = wide_ellipse();
  CHECK(estimate_IS(apply_affine(scale, ellipse), 1.0).value ==
        doctest::Approx(factor * estimate_IS(ellipse, 1.0).value).epsilon(1e-12));

  ConvexBody square = unit_square();
  CHECK(estimate_IS(apply_affine(scale, square), 1.0).value ==
        doctest::Approx(factor * estimate_IS(square, 1.0).value).epsilon(1e-6));
}

TEST_CASE("range probes walk monotonically to the divergent flag") {
  ConvexBody square = unit_square();

  SUBCASE("inner supremum, p above n: shrinking inscribed balls") {
    ExtremalEstimate probe = range_probe(square, ExtremalKind::kInnerMax, 3.0);
    CHECK(probe.infinite);
    CHECK(std::isinf(probe.value));
    REQUIRE(probe.candidate_log.size() >= 5);
    for (std::size_t i = 0; i + 1 < probe.candidate_log.size(); ++i)
      CHECK(probe.candidate_log[i + 1].value > probe.candidate_log[i].value);
    CHECK(probe.bound_status.pass);
    REQUIRE(probe.witness.has_value());
  }

  SUBCASE("inner supremum, p in (-n, 0): inscribed polygons hit the flag directly") {
    ExtremalEstimate probe = range_probe(square, ExtremalKind::kInnerMax, -1.0);
    CHECK(probe.infinite);
    REQUIRE(probe.candidate_log.size() >= 5);
    for (const CandidateValue& cv : probe.candidate_log) CHECK(std::isinf(cv.value));
    REQUIRE(probe.witness.has_value());
  }

  SUBCASE("inner supremum, p below -n: shrinking inscribed balls") {
    ExtremalEstimate probe = range_probe(square, ExtremalKind::kInnerMax, -3.0);
    CHECK(probe.infinite);
    REQUIRE(probe.candidate_log.size() >= 5);
    CHECK(values_nondecreasing(probe.candidate_log));
    CHECK(probe.candidate_log.back().value > probe.candidate_log.front().value);
  }

  SUBCASE("outer supremum, p below n: growing enclosing balls") {
    ExtremalEstimate probe = range_probe(square, ExtremalKind::kOuterMax, 1.0);
    CHECK(probe.infinite);
    REQUIRE(probe.candidate_log.size() >= 5);
    for (std::size_t i = 0; i + 1 < probe.candidate_log.size(); ++i)
      CHECK(probe.candidate_log[i + 1].value > probe.candidate_log[i].value);
    REQUIRE(probe.witness.has_value());
    CHECK(probe.witness->kind() == "ball");
  }

  SUBCASE("outer supremum, p below -n: corner-rounded boxes") {
    ExtremalEstimate probe = range_probe(square, ExtremalKind::kOuterMax, -3.0);
    CHECK(probe.infinite);
    REQUIRE(probe.candidate_log.size() >= 5);
    for (std::size_t i = 0; i + 1 < probe.candidate_log.size(); ++i)
      CHECK(probe.candidate_log[i + 1].value > probe.candidate_log[i].value);
  }

  SUBCASE("outer infimum, p positive: enclosing polygons sit at zero") {
    ExtremalEstimate probe = range_probe(square, ExtremalKind::kOuterMin, 1.0);
    CHECK_FALSE(probe.infinite);
    CHECK(probe.value == 0.0);
    REQUIRE(probe.candidate_log.size() >= 5);
    for (const CandidateValue& cv : probe.candidate_log) CHECK(cv.value == 0.0);
    CHECK(probe.bound_status.pass);
  }

  SUBCASE("inner infimum, p in (-n, 0]: shrinking balls decay to zero") {
    ExtremalEstimate probe = range_probe(square, ExtremalKind::kInnerMin, -1.0);
    CHECK_FALSE(probe.infinite);
    CHECK(probe.value == 0.0);
    REQUIRE(probe.candidate_log.size() >= 5);
    for (std::size_t i = 0; i + 1 < probe.candidate_log.size(); ++i)
      CHECK(probe.candidate_log[i + 1].value < probe.candidate_log[i].value);
  }

  SUBCASE("finite ranges refuse to probe") {
    CHECK_THROWS_AS(range_probe(square, ExtremalKind::kInnerMax, 1.0), NotDivergentRange);
    CHECK_THROWS_AS(range_probe(square, ExtremalKind::kInnerMax, 2.0), NotDivergentRange);
    CHECK_THROWS_AS(range_probe(square, ExtremalKind::kOuterMax, 4.0), NotDivergentRange);
    CHECK_THROWS_AS(range_probe(square, ExtremalKind::kOuterMin, -1.0), NotDivergentRange);
    CHECK_THROWS_AS(range_probe(square, ExtremalKind::kOuterMin, 0.0), NotDivergentRange);
    CHECK_THROWS_AS(range_probe(square, ExtremalKind::kOuterMax, -2.0), NotDivergentRange);
  }
}

TEST_CASE("normalized maps are monotone along the estimator output") {
  ExtremalConfig config;

  SUBCASE("inner supremum map increases on the square") {
    auto reports = verify_monotonicity(unit_square(), ExtremalKind::kInnerMax,
                                       {0.5, 1.0, 1.5, 2.0}, config);
    REQUIRE(reports.size() == 3);
    for (const BoundReport& r : reports) CHECK(r.pass);
  }

  SUBCASE("the maps are constant across p on balls") {
    auto is = verify_monotonicity(make_ball(2, 1.0), ExtremalKind::kInnerMax, {0.5, 1.0, 1.5},
                                  config);
    for (const BoundReport& r : is) {
      CHECK(r.pass);
      CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    }
    auto os = verify_monotonicity(make_ball(2, 0.5), ExtremalKind::kOuterMin, {-1.5, -1.0, -0.5},
                                  config);
    for (const BoundReport& r : os) CHECK(r.pass);
  }

  SUBCASE("outer infimum map decreases on the square") {
    auto reports = verify_monotonicity(unit_square(), ExtremalKind::kOuterMin,
                                       {-1.5, -1.0, -0.5}, config);
    REQUIRE(reports.size() == 2);
    for (const BoundReport& r : reports) {
      CHECK(r.pass);
      CHECK(r.value <= r.upper);
    }
  }

  SUBCASE("outer supremum map is flat on ellipse inputs") {
    auto reports = verify_monotonicity(wide_ellipse(), ExtremalKind::kOuterMax, {3.0, 4.0, 6.0},
                                       config);
    for (const BoundReport& r : reports) CHECK(r.pass);
  }

  SUBCASE("degenerate grids and kinds are rejected") {
    CHECK(verify_monotonicity(make_ball(2, 1.0), ExtremalKind::kInnerMax, {1.0}, config).empty());
    CHECK_THROWS_AS(verify_monotonicity(make_ball(2, 1.0), ExtremalKind::kInnerMin, {1.0, 2.0},
                                        config),
                    Unsupported);
    CHECK_THROWS_AS(verify_monotonicity(make_ball(2, 1.0), ExtremalKind::kInnerMax, {0.0, 1.0},
                                        config),
                    POutOfRange);
    CHECK_THROWS_AS(verify_monotonicity(make_ball(2, 1.0), ExtremalKind::kOuterMax,
                                        {3.0, kInf}, config),
                    POutOfRange);
  }
}

TEST_CASE("perturbation smoke test stays inside the scaling envelope") {
  ConvexBody square = unit_square();

  BoundReport zero = perturbation_smoke(square, ExtremalKind::kInnerMax, 1.0, 0.0);
  CHECK(zero.pass);
  CHECK(zero.value == doctest::Approx(1.0).epsilon(1e-12));

  // The shrunken copy gives the larger ratio, (1 - t)^{-2/3}, which is also
  // exactly the envelope bound.
  BoundReport ball = perturbation_smoke(make_ball(2, 1.0), ExtremalKind::kInnerMax, 1.0, 0.01);
  CHECK(ball.pass);
  CHECK(ball.value == doctest::Approx(std::pow(0.99, -2.0 / 3.0)).epsilon(1e-9));
  CHECK(ball.upper == doctest::Approx(std::pow(0.99, -2.0 / 3.0)).epsilon(1e-12));

  BoundReport os = perturbation_smoke(square, ExtremalKind::kOuterMin, -1.0, 0.05);
  CHECK(os.pass);
  CHECK(os.value <= os.upper + os.tolerance);

  CHECK_THROWS_AS(perturbation_smoke(square, ExtremalKind::kInnerMax, 1.0, 1.5), InvalidInput);
}
