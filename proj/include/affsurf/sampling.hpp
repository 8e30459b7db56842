#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <string>
#include <vector>

#include "affsurf/geometry.hpp"

namespace affsurf {

// Uniform samples from the interior of a convex body by the hit-and-run
// chord walk. The chain starts at the origin (which must be strictly
// interior) and records one point after every `burn_in` chord steps, so the
// output is deterministic given the seed. Rows of the result are points.
Eigen::MatrixXd hit_and_run(const ConvexBody& body, long count, int burn_in,
                            std::uint64_t seed);

// Empirical mass of the spherical annulus centred at radius L*sqrt(n) with
// half-width c_thin*L*n^(1/3), where L is the isotropic constant read off
// the body's own moments. The body must already be in isotropic position
// (volume 1, covariance a multiple of the identity); otherwise NotIsotropic
// is thrown. smallest_covering_c reports the smallest multiplier on a fixed
// grid whose annulus captures at least half the mass (infinity when even the
// largest grid value fails).
struct ThinShellCheck {
  double mass = 0.0;
  double smallest_covering_c = 0.0;
  double L = 0.0;
  long samples = 0;
};

ThinShellCheck thin_shell_check(const ConvexBody& body, double c_thin, long samples,
                                std::uint64_t seed);

struct Shell {
  int index = 0;
  double inner = 0.0;  // radii in (inner, outer]
  double outer = 0.0;
  double mass = 0.0;   // empirical fraction of the body's mass
};

// Dyadic radial partition of the annulus spanned by the thin shell. The
// shells are (2^(i/n) ell, 2^((i+1)/n) ell] for i = 0..k_n with
// ell = L(sqrt(n) - c*n^(1/3)); the most massive shell is selected and its
// inner radius reported as R.
struct ShellPartition {
  explicit ShellPartition(ConvexBody b) : body(std::move(b)) {}

  ConvexBody body;
  double c_thin = 0.0;
  double L = 0.0;
  double ell = 0.0;  // inner radius of the first shell
  int k_n = 0;
  std::vector<Shell> shells;
  int chosen_index = 0;
  double R = 0.0;
  double thin_shell_mass = 0.0;
  double shell_mass_lower = 0.0;  // pigeonhole floor thin_shell_mass/(k_n+1)
  Eigen::MatrixXd chosen_points;  // samples landing in the chosen shell
  long samples = 0;
  std::uint64_t seed = 0;
};

// Builds the shell partition for an isotropic body. Refuses the construction
// when c_thin >= n^(1/6), which would make the innermost radius nonpositive.
ShellPartition build_shell_partition(const ConvexBody& body, double c_thin, long samples,
                                     std::uint64_t seed);

// Direction-sampled cone {r*theta : rho(theta) > R, 0 <= r <= R}. sigma_O is
// the fraction of the sphere where the radial function exceeds R; the cone
// volume follows exactly from it.
struct SOSet {
  double R = 0.0;
  double sigma_O = 0.0;
  double sigma_std_error = 0.0;
  double S_O_volume = 0.0;
  long directions = 0;
};

SOSet build_SO(const ConvexBody& body, double R, long directions, std::uint64_t seed);

}  // namespace affsurf
