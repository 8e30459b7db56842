#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "affsurf/asp.hpp"
#include "affsurf/errors.hpp"
#include "affsurf/geometry.hpp"
#include "affsurf/sampling.hpp"
#include "affsurf/util.hpp"

using namespace affsurf;

namespace {

// Volume of the intersection of the cube [-1/2,1/2]^3 with a centered ball,
// valid while the ball pokes through the faces only (r <= sqrt(2)/2).
double cube_ball_volume(double r) {
  double v = 4.0 / 3.0 * kPi * r * r * r;
  if (r > 0.5) {
    double cap = kPi * (r - 0.5) * (r - 0.5) * (2.0 * r + 0.5) / 3.0;
    v -= 6.0 * cap;
  }
  return v;
}

}  // namespace

TEST_CASE("chord walk reproduces square moments") {
  const long n = 20000;
  Eigen::MatrixXd pts = hit_and_run(make_cube(2), n, 50, 1);
  Eigen::Vector2d mean = pts.colwise().mean();
  double sigma_mean = std::sqrt(1.0 / 3.0 / n);
  CHECK(mean.norm() < 3.0 * sigma_mean * std::sqrt(2.0));
  for (int j = 0; j < 2; ++j) {
    double var = pts.col(j).squaredNorm() / n - mean[j] * mean[j];
    double sigma_var = std::sqrt((1.0 / 5.0 - 1.0 / 9.0) / n);
    CHECK(std::abs(var - 1.0 / 3.0) < 3.0 * sigma_var);
  }
}

TEST_CASE("chord walk reproduces disk radial mass") {
  const long n = 20000;
  Eigen::MatrixXd pts = hit_and_run(make_ball(2, 1.0), n, 50, 2);
  long inside = 0;
  for (long i = 0; i < n; ++i)
    if (pts.row(i).norm() <= 0.5) ++inside;
  double frac = static_cast<double>(inside) / n;
  double sigma = std::sqrt(0.25 * 0.75 / n);
  CHECK(std::abs(frac - 0.25) < 3.0 * sigma);
}

TEST_CASE("chord walk needs the origin inside") {
  CHECK_THROWS_AS(hit_and_run(make_ball(Eigen::Vector2d(3.0, 0.0), 1.0), 10, 5, 1),
                  OriginNotInterior);
}

TEST_CASE("annulus mass of the unit-volume cube") {
  ConvexBody cube = make_cube(3, 0.5);
  const long n = 20000;

  ThinShellCheck full = thin_shell_check(cube, 2.0, n, 3);
  CHECK(full.mass == doctest::Approx(1.0));
  CHECK(full.L == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-10));

  ThinShellCheck zero = thin_shell_check(cube, 0.0, n, 3);
  CHECK(zero.mass == doctest::Approx(0.0));

  // Exact annulus mass from the cube-ball intersection volume.
  double L = 1.0 / std::sqrt(12.0);
  double center = L * std::sqrt(3.0);
  double unit = L * std::pow(3.0, 1.0 / 3.0);
  double c = 0.4;
  double want = cube_ball_volume(center + c * unit) - cube_ball_volume(center - c * unit);
  ThinShellCheck mid = thin_shell_check(cube, c, n, 3);
  double sigma = std::sqrt(want * (1.0 - want) / n);
  CHECK(std::abs(mid.mass - want) < 4.0 * sigma);

  // Smallest grid multiplier holding half the mass: exact masses put it at
  // 0.25 (0.547 of the body) while 0.20 holds only 0.456.
  CHECK(mid.smallest_covering_c == doctest::Approx(0.25));
}

TEST_CASE("annulus mass rejects non-isotropic bodies") {
  CHECK_THROWS_AS(thin_shell_check(make_cube(3), 1.0, 1000, 1), NotIsotropic);
  ConvexBody slab = make_box(Eigen::Vector3d(-1.0, -0.5, -0.25),
                             Eigen::Vector3d(1.0, 0.5, 0.25));
  CHECK_THROWS_AS(thin_shell_check(slab, 1.0, 1000, 1), NotIsotropic);
}

TEST_CASE("shell partition of the unit-volume ball") {
  double r = std::pow(3.0 / (4.0 * kPi), 1.0 / 3.0);
  ConvexBody ball = make_ball(3, r);
  ShellPartition part = build_shell_partition(ball, 1.0, 20000, 5);

  CHECK(part.k_n == 10);
  double L = r / std::sqrt(5.0);
  CHECK(part.L == doctest::Approx(L).epsilon(1e-9));
  CHECK(part.ell ==
        doctest::Approx(L * (std::sqrt(3.0) - std::pow(3.0, 1.0 / 3.0))).epsilon(1e-9));

  // Shells tile the annulus with no gaps.
  for (int i = 0; i + 1 <= part.k_n; ++i)
    CHECK(part.shells[i].outer == doctest::Approx(part.shells[i + 1].inner));

  // Radial mass of the ball concentrates in the outermost populated shell;
  // the ball boundary r = 0.62 falls inside shell 8 = (2^(8/3) ell, 8 ell].
  CHECK(part.chosen_index == 8);
  CHECK(part.R == doctest::Approx(part.ell * std::pow(2.0, 8.0 / 3.0)));
  CHECK(part.shells[part.chosen_index].mass >= part.shell_mass_lower);
  CHECK(part.shells[part.chosen_index].mass >= 1.0 / (2.0 * (part.k_n + 1)));

  // Exact radial law (t/r)^3 for the two heaviest shells.
  auto exact_mass = [&](const Shell& s) {
    double hi = std::min(s.outer, r), lo = std::min(s.inner, r);
    return std::max(0.0, (hi * hi * hi - lo * lo * lo) / (r * r * r));
  };
  for (int i : {7, 8}) {
    double want = exact_mass(part.shells[i]);
    double sigma = std::sqrt(want * (1.0 - want) / part.samples);
    CHECK(std::abs(part.shells[i].mass - want) < 4.0 * sigma);
  }

  CHECK(part.R >= part.ell - 1e-12);
  CHECK(part.R <= L * (std::sqrt(3.0) + std::pow(3.0, 1.0 / 3.0)) + 1e-12);
}

TEST_CASE("shell partition invariants on the cube") {
  ConvexBody cube = make_cube(3, 0.5);
  ShellPartition part = build_shell_partition(cube, 1.0, 20000, 6);
  CHECK(part.shells[part.chosen_index].mass >= part.shell_mass_lower);
  CHECK(part.R == doctest::Approx(part.shells[part.chosen_index].inner));

  // Every chosen-shell point, rescaled inward by one shell step, lies in the
  // cone over the directions whose radial function clears R.
  for (int i = 0; i < part.chosen_points.rows(); ++i) {
    Eigen::VectorXd x = part.chosen_points.row(i);
    CHECK(radial(cube, x.normalized()) > part.R);
    CHECK(std::pow(2.0, -1.0 / 3.0) * x.norm() <= part.R + 1e-12);
  }
}

TEST_CASE("construction is refused when the annulus degenerates") {
  ConvexBody cube = make_cube(3, 0.5);
  CHECK_THROWS_AS(build_shell_partition(cube, 1.25, 1000, 1), ConstructionRefused);
}

TEST_CASE("direction cone over the ball") {
  SOSet in = build_SO(make_ball(2, 1.0), 0.9, 2000, 1);
  CHECK(in.sigma_O == doctest::Approx(1.0));
  CHECK(in.S_O_volume == doctest::Approx(0.81 * kPi));
  SOSet out = build_SO(make_ball(2, 1.0), 1.1, 2000, 1);
  CHECK(out.sigma_O == doctest::Approx(0.0));
  CHECK(out.S_O_volume == doctest::Approx(0.0));
}

TEST_CASE("direction cone over the square matches the exact arc measure") {
  double sigma_exact = 4.0 * (kPi / 2.0 - 2.0 * std::acos(1.0 / 1.2)) / (2.0 * kPi);
  SOSet so = build_SO(make_cube(2), 1.2, 200000, 2);
  CHECK(std::abs(so.sigma_O - sigma_exact) < 4.0 * so.sigma_std_error);

  // Cone identity: the boundary measure reported by the cap bound equals
  // n |S_O| / R up to the two independent direction samples.
  CapBoundDetail detail;
  asp_cap_lower_bound(make_cube(2), 1.2, 1.0, 200000, 3, &detail);
  double lhs = detail.mu_RO;
  double rhs = 2.0 * so.S_O_volume / 1.2;
  double scale = 2.0 * 2.0 * kPi * 1.2 / (2.0 * kPi);  // d(mu)/d(sigma)
  double err = std::hypot(detail.sigma_std_error, so.sigma_std_error) * scale;
  CHECK(std::abs(lhs - rhs) < 4.0 * err + 1e-12);
}

TEST_CASE("chosen shell volume is dominated by the cone volume") {
  double r = std::pow(3.0 / (4.0 * kPi), 1.0 / 3.0);
  ConvexBody ball = make_ball(3, r);
  ShellPartition part = build_shell_partition(ball, 1.0, 20000, 7);
  SOSet so = build_SO(ball, part.R, 50000, 8);
  // For the ball every direction clears R, so the cone volume is exact.
  CHECK(so.sigma_O == doctest::Approx(1.0));
  double shell_volume = part.shells[part.chosen_index].mass;  // |K| = 1
  CHECK(so.S_O_volume >= 0.5 * shell_volume - 4.0 * std::sqrt(0.44 * 0.56 / 20000.0));
}
