#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "affsurf/asp.hpp"
#include "affsurf/errors.hpp"
#include "affsurf/util.hpp"

using namespace affsurf;

namespace {
const double kTwoPi = 2.0 * kPi;
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("closed forms on balls and ellipsoids") {
  CHECK(asp_closed_form(make_ball(2, 1.0), 1.0).value == doctest::Approx(kTwoPi));
  CHECK(asp_closed_form(make_ball(2, 2.0), 1.0).value ==
        doctest::Approx(std::pow(2.0, 2.0 / 3.0) * kTwoPi));
  CHECK(asp_closed_form(make_ball(3, 1.0), 2.0).value ==
        doctest::Approx(3.0 * unit_ball_volume(3)));

  // Scaling r B: exponent n(n-p)/(n+p).
  for (double p : {0.0, 0.5, 1.0, 3.0}) {
    double lhs = asp_closed_form(make_ball(3, 1.7), p).value;
    double rhs = std::pow(1.7, 3.0 * (3.0 - p) / (3.0 + p)) * 3.0 * unit_ball_volume(3);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }

  // diag(1/4, 1) is the image of the disk under det = 2; at p = 0 the value
  // is n |K| = 2 * 2pi.
  auto ell = make_ellipsoid(Eigen::Vector2d::Zero(),
                            (Eigen::Matrix2d() << 0.25, 0.0, 0.0, 1.0).finished());
  CHECK(asp_closed_form(ell, 0.0).value == doctest::Approx(4.0 * kPi));
  CHECK(asp_closed_form(ell, 1.0).value ==
        doctest::Approx(std::pow(2.0, 1.0 / 3.0) * kTwoPi));

  // Every ellipsoid collapses to n w_n at the affine-invariant point p = n.
  CHECK(asp_closed_form(ell, 2.0).value == doctest::Approx(kTwoPi));

  CHECK_THROWS_AS(asp_closed_form(make_ball(2, 1.0), -2.0), PEqualsMinusN);
  CHECK_THROWS_AS(asp_closed_form(make_cube(2), 1.0), InvalidInput);
}

TEST_CASE("support quadrature reproduces the disk at several p") {
  auto disk = SupportBody2D::disk(1.0);
  for (double p : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    AspValue v = asp_quadrature_2d(disk, p);
    CHECK(std::abs(v.value - kTwoPi) < 1e-9);
    CHECK(v.method == "quadrature2d");
  }
}

TEST_CASE("support quadrature matches the ellipse closed form") {
  auto ell = SupportBody2D::ellipse(2.0, 1.0);
  AspValue v = asp_quadrature_2d(ell, 1.0);
  CHECK(std::abs(v.value - std::pow(2.0, 1.0 / 3.0) * kTwoPi) < 1e-8);
  CHECK(v.error_estimate < 1e-8);

  // p = infinity: integral of h^{-2}, which is 2pi/(ab) on an ellipse.
  AspValue vi = asp_quadrature_2d(ell, kInf);
  CHECK(vi.value == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(asp_closed_form(
            make_ellipsoid(Eigen::Vector2d::Zero(),
                           (Eigen::Matrix2d() << 0.25, 0.0, 0.0, 1.0).finished()),
            kInf)
            .value == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("quadrature recovers n|K| at p = 0") {
  const int m = 512;
  Eigen::VectorXd h(m);
  for (int j = 0; j < m; ++j) {
    double t = kTwoPi * j / m;
    h[j] = 1.0 + 0.08 * std::cos(2.0 * t) + 0.03 * std::sin(4.0 * t + 0.7);
  }
  auto body = make_support_body(SupportBody2D::from_samples(h));
  const auto* s = body.get_if<SupportBody2D>();
  REQUIRE(s != nullptr);
  AspValue v = asp_quadrature_2d(*s, 0.0);
  CHECK(v.value == doctest::Approx(2.0 * s->area()).epsilon(1e-11));
}

TEST_CASE("quadrature requires a centered body") {
  auto shifted = SupportBody2D::ellipse(1.0, 0.6).translated(Eigen::Vector2d(0.3, 0.0));
  CHECK_THROWS_AS(asp_quadrature_2d(shifted, 1.0), NotCentered);
  CHECK_THROWS_AS(asp_quadrature_2d(SupportBody2D::disk(1.0), -2.0), PEqualsMinusN);
}

TEST_CASE("affine equivariance of the p-surface integral") {
  // as_p(TK) = |det T|^{(n-p)/(n+p)} as_p(K) for linear maps.
  for (double p : {0.5, 1.0, 2.5}) {
    Eigen::Matrix2d T;
    T << 1.7, 0.0, 0.0, 0.4;
    AffineMap map = AffineMap::linear_only(T);
    double factor = std::pow(map.abs_det(), (2.0 - p) / (2.0 + p));

    auto ell = make_ellipsoid(Eigen::Vector2d::Zero(),
                              (Eigen::Matrix2d() << 1.0 / 2.25, 0.0, 0.0, 1.0).finished());
    CHECK(asp(apply_affine(map, ell), p).value ==
          doctest::Approx(factor * asp(ell, p).value).epsilon(1e-12));

    auto body = make_support_body(SupportBody2D::ellipse(1.2, 0.7, 0.5));
    double base = asp(body, p).value;
    double image = asp(apply_affine(map, body), p).value;
    CHECK(std::abs(image - factor * base) < 1e-7 * std::max(1.0, factor * base));
  }
}

TEST_CASE("polytope catalogue of degenerate values") {
  auto square = make_cube(2);
  CHECK(asp(square, 1.0).value == 0.0);
  CHECK(asp(square, kInf).value == 0.0);
  CHECK(asp(square, 0.0).value == doctest::Approx(8.0));
  AspValue neg = asp(square, -1.0);
  CHECK(neg.infinite);
  CHECK(asp(square, -3.0).value == 0.0);
  CHECK_THROWS_AS(asp(square, -2.0), PEqualsMinusN);

  auto oct = make_cross_polytope(3);
  CHECK(asp(oct, 0.0).value == doctest::Approx(3.0 * 4.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("square clipped by a ball integrates exactly over the arcs") {
  const double R = 1.2;
  auto lens = intersect_ball(make_cube(2), R);
  REQUIRE(lens.get_if<BallIntersection>() != nullptr);

  // Four corner arcs, each spanning pi/2 - 2 arccos(1/R).
  double span = kPi / 2.0 - 2.0 * std::acos(1.0 / R);
  double theta_total = 4.0 * span;
  AspValue v1 = asp(lens, 1.0);
  CHECK(v1.value == doctest::Approx(std::pow(R, 2.0 / 3.0) * theta_total).epsilon(1e-12));

  // p = 0 degenerates to twice the area; edges plus circular sectors.
  double b = std::sqrt(R * R - 1.0);
  double area = 4.0 * b + 0.5 * R * R * theta_total;
  CHECK(asp(lens, 0.0).value == doctest::Approx(2.0 * area).epsilon(1e-12));
  CHECK(volume(lens) == doctest::Approx(area).epsilon(1e-12));

  // Flat pieces blow up for -n < p < 0 just as they do on the bare polytope.
  CHECK(asp(lens, -0.5).infinite);
}

TEST_CASE("hull of square and ball integrates exactly over the bulges") {
  const double R = 1.2;
  auto hull = convex_hull_with_ball(make_cube(2), R);
  REQUIRE(hull.get_if<BallHull>() != nullptr);

  // Over each edge the ball bulges out; tangency from the corners trims the
  // arc to pi/2 - 2 arccos(R/|corner|) per edge.
  double gamma = std::acos(R / std::sqrt(2.0));
  double span = kPi / 2.0 - 2.0 * gamma;
  double theta_total = 4.0 * span;
  AspValue v1 = asp(hull, 1.0);
  CHECK(v1.value == doctest::Approx(std::pow(R, 2.0 / 3.0) * theta_total).epsilon(1e-12));

  // Area check: four corner kites plus the circular sectors.
  double tangent_len = std::sqrt(2.0 - R * R);
  double kite = 2.0 * 0.5 * R * tangent_len;
  double area = 4.0 * kite + 0.5 * R * R * theta_total;
  CHECK(volume(hull) == doctest::Approx(area).epsilon(1e-12));
  CHECK(asp(hull, 0.0).value == doctest::Approx(2.0 * area).epsilon(1e-12));
}

TEST_CASE("spherical cap lower bound") {
  // Whole sphere case: every direction reaches past R, so the bound equals
  // the closed form for the clipped ball exactly.
  AspValue ball_bound = asp_cap_lower_bound(make_ball(2, 1.0), 0.5, 1.0, 20000, 3);
  CHECK(ball_bound.value == doctest::Approx(kPi * std::pow(2.0, 1.0 / 3.0)).epsilon(1e-12));
  CHECK(ball_bound.error_estimate == 0.0);
  CHECK(ball_bound.value ==
        doctest::Approx(asp_closed_form(make_ball(2, 0.5), 1.0).value).epsilon(1e-12));

  // Square at R = 1.2: the surviving direction fraction has a closed form.
  CapBoundDetail detail;
  AspValue sq = asp_cap_lower_bound(make_cube(2), 1.2, 1.0, 400000, 11, &detail);
  double sigma_exact = (kPi / 2.0 - 2.0 * std::acos(1.0 / 1.2)) * 4.0 / kTwoPi;
  CHECK(std::abs(detail.sigma - sigma_exact) < 4.0 * detail.sigma_std_error + 1e-12);
  double mu_exact = sigma_exact * kTwoPi * 1.2;
  double bound_exact = mu_exact * std::pow(1.0 / 1.2, 2.0 * 2.0 * 1.0 / 3.0 - 1.0);
  CHECK(std::abs(sq.value - bound_exact) < 4.0 * sq.error_estimate + 1e-12);

  // Beyond the circumradius nothing survives.
  CHECK(asp_cap_lower_bound(make_cube(2), 2.0, 1.0, 1000, 5).value == 0.0);

  CHECK_THROWS_AS(asp_cap_lower_bound(make_cube(2), 1.2, -0.5, 100, 1), POutOfRange);
}

TEST_CASE("lower bound never exceeds the exact clipped value") {
  // In 2-D the clipped body has an exact piecewise value; the spherical part
  // alone must sit below it.
  const double R = 1.2;
  auto lens = intersect_ball(make_cube(2), R);
  double exact = asp(lens, 1.0).value;
  AspValue bound = asp_cap_lower_bound(make_cube(2), R, 1.0, 200000, 17);
  CHECK(bound.value <= exact + 4.0 * bound.error_estimate);
  // For p = 1 the spherical part is the entire integral, so up to the Monte
  // Carlo noise in sigma the bound and the exact value coincide.
  CHECK(std::abs(bound.value - exact) < 4.0 * bound.error_estimate + 1e-12);
}
