#pragma once

#include <cstdint>
#include <string>

#include "affsurf/geometry.hpp"

namespace affsurf {

// Result of an L_p affine surface area evaluation. `value` is +inf and
// `infinite` is set for the divergent polytope range -n < p < 0; every other
// outcome is a finite nonnegative number.
struct AspValue {
  double p = 1.0;
  double value = 0.0;
  bool infinite = false;
  std::string method;  // closed_form | quadrature2d | floating_limit | spherical_cap_lower_bound
  double error_estimate = 0.0;
  std::uint64_t seed = 0;
};

// as_p of a ball or ellipsoid. Balls of radius r give r^{n(n-p)/(n+p)} n w_n;
// an ellipsoid is an affine image of the unit ball, so the determinant factor
// from the affine rule applies.
AspValue asp_closed_form(const ConvexBody& body, double p);

// Trapezoidal evaluation of the boundary integral for a strictly convex 2-D
// body given by its support function:
//   as_p = integral over [0, 2pi) of r^{1 - p/(2+p)} h^{-2(p-1)/(2+p)},
// with r = h + h'' the curvature radius. m = 0 evaluates on the body's own
// grid; the error estimate compares against the half-resolution sum.
AspValue asp_quadrature_2d(const SupportBody2D& body, double p, int m = 0);

// Lower bound on as_p(K intersect R*ball) from the spherical part of the
// boundary: mu(RO) * (1/R)^{2np/(n+p)-1}, where mu(RO) = sigma * n w_n R^{n-1}
// and sigma is the fraction of directions whose radial function exceeds R,
// estimated by Monte Carlo. Details (sigma, mu) are reported on request.
struct CapBoundDetail {
  double sigma = 0.0;
  double sigma_std_error = 0.0;
  double mu_RO = 0.0;
};
AspValue asp_cap_lower_bound(const ConvexBody& body, double R, double p,
                             long samples = 200000, std::uint64_t seed = 1,
                             CapBoundDetail* detail = nullptr);

// Dispatcher: closed form for balls/ellipsoids, the flat-boundary catalogue
// for polytopes (0 for p > 0 or p < -n, n|K| at p = 0, +inf in between),
// support-function quadrature in 2-D, and exact piecewise integration for
// ball intersections and hulls in 2-D.
AspValue asp(const ConvexBody& body, double p);

}  // namespace affsurf
