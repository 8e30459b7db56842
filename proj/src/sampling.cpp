#include "affsurf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "affsurf/errors.hpp"
#include "affsurf/rng.hpp"
#include "affsurf/util.hpp"

namespace affsurf {

namespace {

// Isotropy data shared by the shell operations: volume must be 1 and the
// covariance a multiple of the identity. Tolerances are loose because the
// moments of high-dimensional polytopes are themselves Monte Carlo.
struct IsotropyData {
  double L = 0.0;
};

IsotropyData require_isotropic(const ConvexBody& body, std::uint64_t seed) {
  Moments mo = moments(body, 200000, seed);
  const int n = body.dim();
  const double vol_tol = mo.method == "exact" ? 1e-6 : 0.05;
  if (std::abs(mo.volume - 1.0) > vol_tol)
    throw NotIsotropic("body volume is not 1");
  Eigen::MatrixXd cov =
      mo.second_moment / mo.volume - mo.centroid * mo.centroid.transpose();
  const double level = cov.trace() / n;
  const double cov_tol = (mo.method == "exact" ? 1e-6 : 0.1) * level;
  if (mo.centroid.norm() > (mo.method == "exact" ? 1e-8 : 0.05) * std::sqrt(level))
    throw NotIsotropic("body centroid is not at the origin");
  Eigen::MatrixXd dev = cov - level * Eigen::MatrixXd::Identity(n, n);
  if (dev.cwiseAbs().maxCoeff() > cov_tol)
    throw NotIsotropic("body covariance is not a multiple of the identity");
  return IsotropyData{std::sqrt(level)};
}

}  // namespace

Eigen::MatrixXd hit_and_run(const ConvexBody& body, long count, int burn_in,
                            std::uint64_t seed) {
  const int n = body.dim();
  if (count <= 0 || burn_in <= 0) throw InvalidInput("sample and step counts must be positive");
  if (!(inradius_origin(body) > 0.0)) throw OriginNotInterior();
  Eigen::MatrixXd out(count, n);
  Rng rng(seed, 11);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (long i = 0; i < count; ++i) {
    for (int step = 0; step < burn_in; ++step) {
      Eigen::VectorXd u = rng.sphere_direction(n);
      double lo, hi;
      try {
        std::tie(lo, hi) = chord(body, x, u);
      } catch (const DomainError&) {
        // Rounding pushed the walker across the boundary; pull it back in.
        x *= 1.0 - 1e-9;
        continue;
      }
      if (!(hi > lo)) continue;
      double xi = rng.uniform();
      // Keep the walker strictly inside so later chord calls stay valid.
      xi = 1e-12 + (1.0 - 2e-12) * xi;
      x += (lo + xi * (hi - lo)) * u;
    }
    out.row(i) = x;
  }
  return out;
}

ThinShellCheck thin_shell_check(const ConvexBody& body, double c_thin, long samples,
                                std::uint64_t seed) {
  if (c_thin < 0.0) throw InvalidInput("shell width multiplier must be nonnegative");
  const int n = body.dim();
  IsotropyData iso = require_isotropic(body, seed);
  const double center = iso.L * std::sqrt(static_cast<double>(n));
  const double unit = iso.L * std::pow(static_cast<double>(n), 1.0 / 3.0);

  Eigen::MatrixXd pts = hit_and_run(body, samples, 50, seed);
  Eigen::VectorXd radii = pts.rowwise().norm();

  ThinShellCheck out;
  out.L = iso.L;
  out.samples = samples;
  long hits = 0;
  for (long i = 0; i < samples; ++i)
    if (std::abs(radii[i] - center) < c_thin * unit) ++hits;
  out.mass = static_cast<double>(hits) / static_cast<double>(samples);

  // Smallest multiplier on a fixed grid whose annulus holds half the mass.
  out.smallest_covering_c = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 60; ++k) {
    double c = 0.05 * k;
    long h = 0;
    for (long i = 0; i < samples; ++i)
      if (std::abs(radii[i] - center) < c * unit) ++h;
    if (2 * h >= samples) {
      out.smallest_covering_c = c;
      break;
    }
  }
  return out;
}

ShellPartition build_shell_partition(const ConvexBody& body, double c_thin, long samples,
                                     std::uint64_t seed) {
  const int n = body.dim();
  if (!(c_thin > 0.0)) throw InvalidInput("shell width multiplier must be positive");
  if (c_thin >= std::pow(static_cast<double>(n), 1.0 / 6.0))
    throw ConstructionRefused("width multiplier must stay below n^(1/6)");
  IsotropyData iso = require_isotropic(body, seed);

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double cbrt_n = std::pow(static_cast<double>(n), 1.0 / 3.0);
  const double ell = iso.L * (sqrt_n - c_thin * cbrt_n);
  const double hi = iso.L * (sqrt_n + c_thin * cbrt_n);
  const int k_n = static_cast<int>(std::floor(n * std::log2(hi / ell)));

  ShellPartition part(body);
  part.c_thin = c_thin;
  part.L = iso.L;
  part.ell = ell;
  part.k_n = k_n;
  part.samples = samples;
  part.seed = seed;

  Eigen::MatrixXd pts = hit_and_run(body, samples, 50, seed);
  Eigen::VectorXd radii = pts.rowwise().norm();

  // One sample set serves every shell; masses are exact fractions of it.
  std::vector<long> counts(static_cast<std::size_t>(k_n) + 1, 0);
  long thin_hits = 0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (long i = 0; i < samples; ++i) {
    double r = radii[i];
    if (r > ell && r < hi) ++thin_hits;
    if (r <= ell) continue;
    int idx = static_cast<int>(std::floor(n * std::log2(r / ell)));
    if (idx >= 0 && idx <= k_n) ++counts[idx];
  }
  part.thin_shell_mass = static_cast<double>(thin_hits) / static_cast<double>(samples);
  part.shell_mass_lower = part.thin_shell_mass / static_cast<double>(k_n + 1);

  int best = 0;
  for (int i = 0; i <= k_n; ++i) {
    Shell s;
    s.index = i;
    s.inner = ell * std::pow(2.0, i * inv_n);
    s.outer = ell * std::pow(2.0, (i + 1) * inv_n);
    s.mass = static_cast<double>(counts[i]) / static_cast<double>(samples);
    part.shells.push_back(s);
    if (s.mass > part.shells[best].mass) best = i;
  }
  part.chosen_index = best;
  part.R = part.shells[best].inner;

  part.chosen_points.resize(counts[best], n);
  long row = 0;
  for (long i = 0; i < samples; ++i) {
    double r = radii[i];
    if (r <= ell) continue;
    int idx = static_cast<int>(std::floor(n * std::log2(r / ell)));
    if (idx == best) part.chosen_points.row(row++) = pts.row(i);
  }
  return part;
}

SOSet build_SO(const ConvexBody& body, double R, long directions, std::uint64_t seed) {
  if (!(R > 0.0)) throw InvalidInput("cone radius must be positive");
  if (directions <= 0) throw InvalidInput("direction count must be positive");
  if (!(inradius_origin(body) > 0.0)) throw OriginNotInterior();
  const int n = body.dim();
  Rng rng(seed, 13);
  long hits = 0;
  for (long i = 0; i < directions; ++i)
    if (radial(body, rng.sphere_direction(n)) > R) ++hits;
  SOSet out;
  out.R = R;
  out.directions = directions;
  out.sigma_O = static_cast<double>(hits) / static_cast<double>(directions);
  out.sigma_std_error =
      std::sqrt(out.sigma_O * (1.0 - out.sigma_O) / static_cast<double>(directions));
  out.S_O_volume = out.sigma_O * std::pow(R, n) * unit_ball_volume(n);
  return out;
}

}  // namespace affsurf
