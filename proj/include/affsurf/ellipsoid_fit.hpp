#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "affsurf/geometry.hpp"

namespace affsurf {

// Enclosing or inscribed ellipsoid together with its certificate data.
// containment_ratio is the smallest lambda (found on facets, vertices or a
// dense direction grid) such that the inner body lies in the outer body
// dilated by lambda about the ellipsoid center; kind "loewner" pairs
// inner = ellipsoid with outer = body, kind "john" the other way round.
struct EllipsoidFit {
  Ellipsoid ellipsoid;
  std::string kind;  // "loewner" or "john"
  double containment_ratio = 0.0;
  double gap = 0.0;  // relative duality gap of the ascent at termination
  int iterations = 0;
};

// Minimum-volume ellipsoid enclosing the body, computed by the Khachiyan
// weight ascent on the vertex set (polytopes) or on a dense boundary sample
// (smooth planar bodies). The returned ellipsoid is rescaled so every input
// point is contained exactly; `gap` certifies near-optimality of its volume.
EllipsoidFit loewner_ellipsoid(const ConvexBody& body, double tol = 1e-7);

// Maximum-volume ellipsoid inscribed in the body, obtained as the polar of
// the enclosing ellipsoid of the polar body. Exact for centrally symmetric
// bodies; for general centered bodies the result is inscribed by
// construction and the certificate reports how far the body sticks out.
EllipsoidFit john_ellipsoid(const ConvexBody& body, double tol = 1e-7);

// Affine map into isotropic position: image volume 1, centroid at the
// origin, covariance L^2 * Id. Moments come from the exact integrators when
// the body supports them and from hit-and-run sampling otherwise; the
// residual fields report an independent re-estimate of how well the image
// satisfies the isotropy conditions.
struct IsotropicCertificate {
  AffineMap map;
  double L = 0.0;  // isotropic constant
  double covariance_residual = 0.0;
  double volume_residual = 0.0;
  std::string method;  // "exact" or "hit_and_run"
  long samples = 0;
  std::uint64_t seed = 0;
};

IsotropicCertificate isotropic_position(const ConvexBody& body, long samples = 200000,
                                        std::uint64_t seed = 0x5eedULL);

// Point s minimizing the area of the polar of the translated body, located
// by Nelder-Mead descent from the centroid; the minimizer is certified by
// checking that the polar body's centroid vanishes to within tol.
Eigen::VectorXd santalo_point(const ConvexBody& body, double tol = 1e-6);

// Product |K| * |polar(K)| in the body's current position.
double volume_product(const ConvexBody& body);

}  // namespace affsurf
