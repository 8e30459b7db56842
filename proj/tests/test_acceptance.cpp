// Acceptance gate: one test case per shipped guarantee, each printing a
// single [PASS]/[FAIL] line with its runtime against the stated budget.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "affsurf/asp.hpp"
#include "affsurf/corpus.hpp"
#include "affsurf/ellipsoid_fit.hpp"
#include "affsurf/extremal.hpp"
#include "affsurf/floating.hpp"
#include "affsurf/geometry.hpp"
#include "affsurf/json_io.hpp"
#include "affsurf/quermass.hpp"
#include "affsurf/rng.hpp"
#include "affsurf/sampling.hpp"
#include "affsurf/support_body.hpp"
#include "affsurf/util.hpp"

using namespace affsurf;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void report(int index, const char* name, bool ok, double elapsed, double budget) {
  std::printf("[%s] %2d. %-58s %7.2f s (budget %g s)\n", ok ? "PASS" : "FAIL", index,
              name, elapsed, budget);
  std::fflush(stdout);
}

#define ACC(cond)                      \
  do {                                 \
    bool acc_ = static_cast<bool>(cond); \
    CHECK(acc_);                       \
    ok = ok && acc_;                   \
  } while (0)

Eigen::MatrixXd random_rotation(int n, Rng& rng) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

// Ratio form of the affine isoperimetric inequality for planar bodies.
struct IsoSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

IsoSides iso_sides(const ConvexBody& body, double p) {
  IsoSides s;
  s.lhs = asp(body, p).value / (2.0 * unit_ball_volume(2));
  s.rhs = std::pow(volume(body) / unit_ball_volume(2), affine_exponent(2, p));
  return s;
}

}  // namespace

TEST_CASE("1. quadrature reproduces the ball value") {
  double t0 = now_seconds();
  bool ok = true;
  SupportBody2D disk = SupportBody2D::from_samples(Eigen::VectorXd::Ones(2048));
  for (double p : {0.0, 0.5, 1.0, 1.5, 2.0})
    ACC(std::abs(asp_quadrature_2d(disk, p).value - 2.0 * kPi) < 1e-9);
  double elapsed = now_seconds() - t0;
  ACC(elapsed < 1.0);
  report(1, "quadrature ball identity, p in {0,...,2}", ok, elapsed, 1.0);
}

TEST_CASE("2. affine equivariance of as_p") {
  double t0 = now_seconds();
  bool ok = true;
  Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    ConvexBody e = random_ellipse(rng);
    Eigen::Matrix2d T;
    if (trial % 2 == 0) {
      T = Eigen::Vector2d(rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0)).asDiagonal();
    } else {
      double phi = rng.uniform(0.0, 2.0 * kPi);
      T << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    }
    ConvexBody image = apply_affine(AffineMap::linear_only(T), e);
    for (double p : {0.5, 1.0, 1.5}) {
      double base = asp(e, p).value;
      double expected = std::pow(std::abs(T.determinant()), affine_exponent(2, p)) * base;
      ACC(std::abs(asp(image, p).value - expected) / expected < 1e-7);
    }
  }
  double elapsed = now_seconds() - t0;
  ACC(elapsed < 10.0);
  report(2, "equivariance over 100 random maps", ok, elapsed, 10.0);
}

TEST_CASE("3. floating-body limit matches the surface integral") {
  double t0 = now_seconds();
  bool ok = true;
  Rng rng(33);
  ConvexBody smooth = random_smooth_body(rng);
  const std::vector<double> deltas = default_floating_deltas();

  struct Case {
    ConvexBody body;
    double reference;
  };
  std::vector<Case> cases;
  cases.push_back({make_ball(2, 1.0), 2.0 * kPi});
  cases.push_back({make_ellipsoid(Eigen::Vector2d::Zero(),
                                  Eigen::Vector2d(0.25, 1.0).asDiagonal()),
                   std::pow(2.0, 1.0 / 3.0) * 2.0 * kPi});
  cases.push_back({smooth, asp(smooth, 1.0).value});
  for (const Case& c : cases) {
    AspValue limit = asp1_floating_limit_2d(c.body, deltas);
    ACC(std::abs(limit.value - c.reference) <= 0.02 * c.reference);
  }
  double elapsed = now_seconds() - t0;
  ACC(elapsed < 30.0);
  report(3, "floating limit vs quadrature within 2%", ok, elapsed, 30.0);
}

TEST_CASE("4. affine isoperimetric inequality on a random corpus") {
  double t0 = now_seconds();
  bool ok = true;
  Rng rng(44);
  for (int i = 0; i < 50; ++i) {
    ConvexBody body = random_smooth_body(rng);
    for (double p : {0.5, 1.0, 1.5}) {
      IsoSides s = iso_sides(body, p);
      ACC(s.lhs <= s.rhs + 1e-7);
    }
    for (double p : {-0.5, -1.0}) {
      IsoSides s = iso_sides(body, p);
      ACC(s.lhs >= s.rhs - 1e-7);
    }
  }
  for (int i = 0; i < 10; ++i) {
    ConvexBody e = random_ellipse(rng);
    for (double p : {0.5, 1.0, 1.5}) {
      IsoSides s = iso_sides(e, p);
      ACC(std::abs(s.lhs - s.rhs) <= 1e-7 * std::max(1.0, s.rhs));
    }
  }
  double elapsed = now_seconds() - t0;
  ACC(elapsed < 60.0);
  report(4, "isoperimetric ratio bound, 50 bodies + 10 ellipses", ok, elapsed, 60.0);
}

TEST_CASE("5. enclosing ellipsoids and their containment factors") {
  double t0 = now_seconds();
  bool ok = true;

  EllipsoidFit square_fit = loewner_ellipsoid(make_cube(2));
  ACC(square_fit.ellipsoid.center.norm() < 1e-6);
  ACC((square_fit.ellipsoid.shape - 0.5 * Eigen::Matrix2d::Identity()).norm() < 1e-6);

  Rng rng(55);
  Eigen::MatrixXd dirs(256, 2);
  for (int i = 0; i < 256; ++i) {
    double theta = 2.0 * kPi * i / 256;
    dirs.row(i) << std::cos(theta), std::sin(theta);
  }
  for (int i = 0; i < 50; ++i) {
    ConvexBody body = random_polygon(rng);
    EllipsoidFit fit = loewner_ellipsoid(body);
    ConvexBody shell = make_ellipsoid(fit.ellipsoid.center, fit.ellipsoid.shape);
    double scale = circumradius_origin(body);
    for (int d = 0; d < 256; ++d) {
      Eigen::VectorXd u = dirs.row(d).transpose();
      ACC(support(body, u) <= support(shell, u) + 1e-7 * scale);
    }
    ACC(fit.containment_ratio <= 2.0 + 1e-6);
  }
  for (int i = 0; i < 25; ++i) {
    ConvexBody body = random_symmetric_polygon(rng);
    EllipsoidFit fit = loewner_ellipsoid(body);
    ACC(fit.containment_ratio <= std::sqrt(2.0) + 1e-6);
  }
  double elapsed = now_seconds() - t0;
  ACC(elapsed < 30.0);
  report(5, "Loewner containment on 75 random polygons", ok, elapsed, 30.0);
}

TEST_CASE("6. isotropic constant of the cube") {
  double t0 = now_seconds();
  bool ok = true;
  const double target = 1.0 / std::sqrt(12.0);

  for (int n = 2; n <= 6; ++n) {
    IsotropicCertificate cert = isotropic_position(make_cube(n, 0.5));
    ACC(cert.method == "exact");
    ACC(std::abs(cert.L - target) < 1e-6);
  }

  // Sampling branch, n = 3: batched hit-and-run estimate with its own
  // standard error; n = 4..6: rotated cubes take the Monte Carlo moments
  // path inside isotropic_position (band = 3x the observed seed spread).
  {
    const int n = 3;
    const int batches = 10;
    const long per_batch = 4000;
    ConvexBody cube = make_cube(n, 0.5);
    std::vector<double> ls(batches);
    double mean = 0.0;
    for (int b = 0; b < batches; ++b) {
      Eigen::MatrixXd pts = hit_and_run(cube, per_batch, 50, 1000 + b);
      Eigen::VectorXd g = pts.colwise().mean().transpose();
      Eigen::MatrixXd centered = pts.rowwise() - g.transpose();
      Eigen::MatrixXd cov = centered.transpose() * centered / double(per_batch);
      ls[b] = std::pow(cov.determinant(), 1.0 / (2.0 * n));
      mean += ls[b] / batches;
    }
    double var = 0.0;
    for (double l : ls) var += (l - mean) * (l - mean) / (batches - 1);
    double sd_of_mean = std::sqrt(var / batches);
    ACC(std::abs(mean - target) <= 3.0 * sd_of_mean);
  }
  for (int n = 4; n <= 6; ++n) {
    Rng rot_rng(99 + n);
    ConvexBody rotated = apply_affine(
        AffineMap::linear_only(random_rotation(n, rot_rng)), make_cube(n, 0.5));
    IsotropicCertificate cert = isotropic_position(rotated, 200000, 1);
    ACC(cert.method == "hit_and_run");
    ACC(std::abs(cert.L - target) < 1.5e-3);
  }

  Rng rng(66);
  IsotropicCertificate base = isotropic_position(make_cube(3, 0.5));
  for (int i = 0; i < 10; ++i) {
    Eigen::Matrix3d T;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) T(r, c) = rng.uniform(-1.0, 1.0) + (r == c ? 2.0 : 0.0);
    AffineMap map{T, Eigen::Vector3d(rng.uniform(-1, 1), rng.uniform(-1, 1), 0.0)};
    IsotropicCertificate cert = isotropic_position(apply_affine(map, make_cube(3, 0.5)));
    ACC(std::abs(cert.L - base.L) < 1e-7);
  }
  double elapsed = now_seconds() - t0;
  ACC(elapsed < 60.0);
  report(6, "isotropic constant 1/sqrt(12), exact + sampling", ok, elapsed, 60.0);
}

TEST_CASE("7. thin-shell pipeline with shell and cone certificates") {
  double t0 = now_seconds();
  bool ok = true;
  const double c_thin = 1.0;
  const long shell_samples = 10000;
  const long mc = 200000;

  for (int n = 3; n <= 8; ++n) {
    std::vector<ConvexBody> bodies;
    bodies.push_back(make_cube(n, 0.5));
    bodies.push_back(make_ball(n, std::pow(unit_ball_volume(n), -1.0 / n)));
    for (const ConvexBody& body : bodies) {
      ShellPartition part = build_shell_partition(body, c_thin, shell_samples, 70 + n);
      ACC(part.R <= 2.0 * std::sqrt(double(n)) * part.L + 1e-12);
      ACC(part.shells[part.chosen_index].mass >=
          part.thin_shell_mass / (part.k_n + 1) - 1e-12);

      // Every sampled point of the chosen shell lies in 2^{1/n} S_O:
      // norm at most 2^{1/n} R and radial function above R.
      const double r_cap = std::pow(2.0, 1.0 / n) * part.R;
      long violations = 0;
      for (Eigen::Index i = 0; i < part.chosen_points.rows(); ++i) {
        Eigen::VectorXd x = part.chosen_points.row(i).transpose();
        double norm = x.norm();
        if (norm > r_cap + 1e-9 || radial(body, x / norm) <= part.R) ++violations;
      }
      ACC(part.chosen_points.rows() > 0);
      ACC(violations == 0);

      // Cone identity mu(RO) R / n = |S_O| and agreement of the
      // direction-sampled volume with an independent volume sample.
      SOSet so = build_SO(body, part.R, mc, 170 + n);
      double mu_RO = so.sigma_O * n * unit_ball_volume(n) * std::pow(part.R, n - 1);
      ACC(std::abs(mu_RO * part.R / n - so.S_O_volume) <= 1e-12 * std::max(1.0, so.S_O_volume));

      Rng vol_rng(270 + n);
      long hits = 0;
      for (long s = 0; s < mc; ++s) {
        Eigen::VectorXd z(n);
        for (int d = 0; d < n; ++d) z[d] = vol_rng.normal();
        z.normalize();
        if (radial(body, z) > part.R) ++hits;
      }
      double frac = double(hits) / mc;
      double ball_vol = unit_ball_volume(n) * std::pow(part.R, n);
      double vol2 = frac * ball_vol;
      double sigma2 = ball_vol * std::sqrt(frac * (1.0 - frac) / mc);
      double sigma1 = so.sigma_std_error * unit_ball_volume(n) * std::pow(part.R, n);
      ACC(std::abs(so.S_O_volume - vol2) <= 3.0 * (sigma1 + sigma2) + 1e-12);
    }
  }
  double elapsed = now_seconds() - t0;
  ACC(elapsed < 300.0);
  report(7, "thin shell, dyadic shells, cone identity, n=3..8", ok, elapsed, 300.0);
}

TEST_CASE("8. inscribed-supremum sandwich") {
  double t0 = now_seconds();
  bool ok = true;

  ExtremalEstimate square = estimate_IS(make_cube(2), 1.0);
  ACC(square.value >= 2.0 * kPi - 1e-9);
  ACC(square.value <= 6.8102);
  ACC(square.bound_status.pass);

  Rng rng(88);
  for (int i = 0; i < 3; ++i) {
    ConvexBody e = random_ellipse(rng);
    ExtremalEstimate est = estimate_IS(e, 1.0);
    ACC(est.witness.has_value());
    ACC(est.witness && est.witness->kind() == "ellipsoid");
    ACC(std::abs(est.value - est.bound_status.upper) <= 1e-6 * est.bound_status.upper);
    if (est.witness)
      ACC(support_distance(*est.witness, e, 512) <= 1e-6 * circumradius_origin(e));
  }
  double elapsed = now_seconds() - t0;
  ACC(elapsed < 60.0);
  report(8, "inscribed sandwich on square and ellipses", ok, elapsed, 60.0);
}

TEST_CASE("9. enclosing-infimum sandwich") {
  double t0 = now_seconds();
  bool ok = true;
  ExtremalEstimate est = estimate_os(make_cube(2), -1.0);
  ACC(est.value >= 12.97 * (1.0 - 1e-3));
  ACC(est.value <= 103.8);
  ACC(est.value <= 16.0 * kPi + 1e-9);
  ACC(est.bound_status.pass);
  ACC(est.witness.has_value());
  double elapsed = now_seconds() - t0;
  ACC(elapsed < 60.0);
  report(9, "enclosing infimum sandwich on the square", ok, elapsed, 60.0);
}

TEST_CASE("10. degenerate parameter catalogue and divergence probes") {
  double t0 = now_seconds();
  bool ok = true;
  Rng rng(100);
  std::vector<ConvexBody> bodies;
  bodies.push_back(make_cube(2));
  bodies.push_back(make_ball(2, 1.0));
  bodies.push_back(make_ellipsoid(Eigen::Vector2d::Zero(),
                                  Eigen::Vector2d(0.25, 1.0).asDiagonal()));
  bodies.push_back(random_polygon(rng));

  for (const ConvexBody& body : bodies) {
    double two_vol = 2.0 * volume(body);
    auto is0 = closed_form_extremal(body, ExtremalKind::kInnerMax, 0.0);
    auto os0 = closed_form_extremal(body, ExtremalKind::kOuterMin, 0.0);
    auto is2 = closed_form_extremal(body, ExtremalKind::kInnerMax, 2.0);
    auto OS2 = closed_form_extremal(body, ExtremalKind::kOuterMax, 2.0);
    ACC(is0 && std::abs(is0->value - two_vol) <= 1e-12 * two_vol);
    ACC(os0 && std::abs(os0->value - two_vol) <= 1e-12 * two_vol);
    ACC(is2 && std::abs(is2->value - 2.0 * kPi) <= 1e-12);
    ACC(OS2 && std::abs(OS2->value - 2.0 * kPi) <= 1e-12);
    for (double p : {0.7, 2.5, -1.0, -3.0}) {
      auto low = closed_form_extremal(body, ExtremalKind::kInnerMin, p);
      ACC(low && low->value == 0.0);
    }
  }

  struct Probe {
    ExtremalKind kind;
    double p;
    bool to_infinity;
  };
  const Probe probes[] = {
      {ExtremalKind::kInnerMax, 3.0, true},  {ExtremalKind::kInnerMax, -1.0, true},
      {ExtremalKind::kInnerMax, -3.0, true}, {ExtremalKind::kOuterMax, 1.0, true},
      {ExtremalKind::kOuterMax, -3.0, true}, {ExtremalKind::kOuterMin, 1.0, false},
      {ExtremalKind::kInnerMin, -1.0, false}};
  for (const Probe& probe : probes) {
    ExtremalEstimate est = range_probe(make_cube(2), probe.kind, probe.p);
    ACC(est.candidate_log.size() >= 5);
    for (std::size_t i = 1; i < est.candidate_log.size(); ++i) {
      double prev = est.candidate_log[i - 1].value;
      double next = est.candidate_log[i].value;
      ACC(probe.to_infinity ? next >= prev - 1e-12 : next <= prev + 1e-12);
    }
    ACC(est.infinite == probe.to_infinity);
  }
  double elapsed = now_seconds() - t0;
  ACC(elapsed < 30.0);
  report(10, "degenerate catalogue exact, probes monotone", ok, elapsed, 30.0);
}

TEST_CASE("11. Steiner coefficients and the non-polynomial scaling profile") {
  double t0 = now_seconds();
  bool ok = true;

  SteinerFit square = steiner_fit(make_cube(2));
  ACC(std::abs(square.W[0] - 4.0) < 1e-8);
  ACC(std::abs(square.W[1] - 4.0) < 1e-8);
  ACC(std::abs(square.W[2] - kPi) < 1e-8);
  ACC(square.residual < 1e-8);

  SteinerFit disk = steiner_fit(make_ball(2, 1.0));
  for (int i = 0; i < 3; ++i) ACC(std::abs(disk.W[i] - kPi) < 1e-8);
  ACC(disk.residual < 1e-8);

  SteinerFit cube = steiner_fit(make_cube(3));
  const double cube_w[] = {8.0, 8.0, 2.0 * kPi, 4.0 * kPi / 3.0};
  for (int i = 0; i < 4; ++i) ACC(std::abs(cube.W[i] - cube_w[i]) < 1e-8);
  ACC(cube.residual < 1e-8);

  HomogeneityFit degree = homogeneity_degree(make_cube(2), ExtremalKind::kInnerMax, 1.0,
                                             {0.5, 0.75, 1.0, 1.5, 2.0});
  ACC(std::abs(degree.degree - 2.0 / 3.0) < 1e-9);

  for (const NonQuermassReport& rep : non_quermass_report({2, 3, 4, 5, 6}))
    ACC(rep.non_quermass);

  double elapsed = now_seconds() - t0;
  ACC(elapsed < 30.0);
  report(11, "Steiner tables exact, scaling degree 2/3, no poly fit", ok, elapsed, 30.0);
}

TEST_CASE("12. Monte Carlo paths replay byte-identically under a fixed seed") {
  double t0 = now_seconds();
  bool ok = true;

  ConvexBody ellipsoid = make_ellipsoid(
      Eigen::Vector3d::Zero(), Eigen::Vector3d(1.0, 0.25, 1.0 / 9.0).asDiagonal());
  SteinerFit f1 = steiner_fit(ellipsoid, {0.2, 0.4, 0.6, 0.8}, 20000, 5);
  SteinerFit f2 = steiner_fit(ellipsoid, {0.2, 0.4, 0.6, 0.8}, 20000, 5);
  ACC(f1.volumes == f2.volumes);
  ACC(f1.W == f2.W);
  ACC(steiner_to_json(f1).dump() == steiner_to_json(f2).dump());

  Rng rot_rng(103);
  ConvexBody rotated = apply_affine(
      AffineMap::linear_only(random_rotation(4, rot_rng)), make_cube(4, 0.5));
  IsotropicCertificate c1 = isotropic_position(rotated, 50000, 9);
  IsotropicCertificate c2 = isotropic_position(rotated, 50000, 9);
  ACC(c1.L == c2.L);
  ACC(c1.map.linear == c2.map.linear);
  ACC(isotropic_to_json(c1).dump() == isotropic_to_json(c2).dump());

  ConvexBody cube3 = make_cube(3, 0.5);
  ShellPartition p1 = build_shell_partition(cube3, 1.0, 5000, 7);
  ShellPartition p2 = build_shell_partition(cube3, 1.0, 5000, 7);
  ACC(p1.R == p2.R);
  ACC(p1.chosen_points == p2.chosen_points);
  ACC(shell_partition_to_json(p1).dump() == shell_partition_to_json(p2).dump());
  ACC(shells_to_csv(p1) == shells_to_csv(p2));

  SOSet s1 = build_SO(cube3, p1.R, 50000, 11);
  SOSet s2 = build_SO(cube3, p1.R, 50000, 11);
  ACC(s1.sigma_O == s2.sigma_O);
  ACC(so_set_to_json(s1).dump() == so_set_to_json(s2).dump());

  AspValue b1 = asp_cap_lower_bound(make_cube(2), 1.2, 1.0, 50000, 13);
  AspValue b2 = asp_cap_lower_bound(make_cube(2), 1.2, 1.0, 50000, 13);
  ACC(b1.value == b2.value);

  Eigen::MatrixXd h1 = hit_and_run(cube3, 2000, 50, 17);
  Eigen::MatrixXd h2 = hit_and_run(cube3, 2000, 50, 17);
  ACC(h1 == h2);

  Rng g1(21), g2(21);
  ConvexBody k1 = random_polygon(g1);
  ConvexBody k2 = random_polygon(g2);
  ACC(k1.get_if<VPolytope>()->vertices == k2.get_if<VPolytope>()->vertices);

  double elapsed = now_seconds() - t0;
  ACC(elapsed < 120.0);
  report(12, "seeded Monte Carlo determinism", ok, elapsed, 120.0);
}
