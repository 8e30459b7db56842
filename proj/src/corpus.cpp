#include "affsurf/corpus.hpp"

#include <cmath>

#include "affsurf/errors.hpp"
#include "affsurf/util.hpp"

namespace affsurf {

namespace {

Eigen::MatrixXd disk_points(Rng& rng, int k) {
  Eigen::MatrixXd pts(k, 2);
  for (int i = 0; i < k; ++i) {
    double r = std::sqrt(rng.uniform());
    double theta = rng.uniform(0.0, 2.0 * kPi);
    pts.row(i) << r * std::cos(theta), r * std::sin(theta);
  }
  return pts;
}

}  // namespace

ConvexBody random_polygon(Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    int k = 5 + static_cast<int>(rng.uniform_index(26));
    Eigen::MatrixXd hull = convex_hull_2d(disk_points(rng, k));
    if (hull.rows() < 3) continue;
    return make_vpolytope(hull, Center::kCentroid);
  }
  throw DegenerateBody("random polygon generation kept collapsing");
}

ConvexBody random_symmetric_polygon(Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    int k = 3 + static_cast<int>(rng.uniform_index(13));
    Eigen::MatrixXd half = disk_points(rng, k);
    Eigen::MatrixXd pts(2 * k, 2);
    pts.topRows(k) = half;
    pts.bottomRows(k) = -half;
    Eigen::MatrixXd hull = convex_hull_2d(pts);
    if (hull.rows() < 4) continue;
    return make_vpolytope(hull, Center::kKeep);
  }
  throw DegenerateBody("random symmetric polygon generation kept collapsing");
}

ConvexBody random_ellipse(Rng& rng) {
  double ratio = std::exp(rng.uniform(0.0, std::log(10.0)));
  double phi = rng.uniform(0.0, 2.0 * kPi);
  Eigen::Matrix2d rot;
  rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  Eigen::Vector2d inv_sq(1.0 / (ratio * ratio), 1.0);
  Eigen::Matrix2d shape = rot * inv_sq.asDiagonal() * rot.transpose();
  return make_ellipsoid(Eigen::Vector2d::Zero(), shape);
}

ConvexBody random_smooth_body(Rng& rng, int grid) {
  const int k_min = 2, k_max = 6;
  double amp[k_max + 1];
  double budget = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    amp[k] = rng.uniform(-1.0, 1.0);
    budget += std::abs(amp[k]) * (k * k - 1.0);
  }
  // h + h'' = 1 + sum a_k (1 - k^2) cos(k theta + phi_k); scaling the
  // amplitudes so the sum of |a_k|(k^2 - 1) is 0.65 keeps it above 0.35.
  double scale = budget > 0.0 ? 0.65 / budget : 0.0;
  double phase[k_max + 1];
  for (int k = k_min; k <= k_max; ++k) phase[k] = rng.uniform(0.0, 2.0 * kPi);

  Eigen::VectorXd h(grid);
  for (int i = 0; i < grid; ++i) {
    double theta = 2.0 * kPi * i / grid;
    double v = 1.0;
    for (int k = k_min; k <= k_max; ++k)
      v += scale * amp[k] * std::cos(k * theta + phase[k]);
    h[i] = v;
  }
  return make_support_body(SupportBody2D::from_samples(h), Center::kCentroid);
}

}  // namespace affsurf
