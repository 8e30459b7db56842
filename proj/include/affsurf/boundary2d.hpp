#pragma once

#include <Eigen/Dense>
#include <memory>
#include <variant>
#include <vector>

#include "affsurf/geometry.hpp"
#include "affsurf/support_body.hpp"

namespace affsurf {

// Counterclockwise circle arc around `center`, traversed from angle phi0 to
// phi1 (phi1 > phi0). The outward normal at angle phi is (cos phi, sin phi).
struct ArcPiece {
  Eigen::Vector2d center;
  double radius = 1.0;
  double phi0 = 0.0, phi1 = 0.0;
};

// Straight segment from a to b.
struct EdgePiece {
  Eigen::Vector2d a, b;
};

// Portion of a smooth support body's boundary over the normal-angle window
// [theta0, theta1]. The pointer must outlive the boundary description.
struct SmoothPiece {
  const SupportBody2D* body = nullptr;
  double theta0 = 0.0, theta1 = 0.0;
};

using BoundaryPiece = std::variant<ArcPiece, EdgePiece, SmoothPiece>;

// Piecewise description of the boundary of a planar convex body, oriented
// counterclockwise. Area and centroid come from exact Green integrals per
// piece (Gauss-Legendre on the curved ones); the L_p-affine surface area
// integral is evaluated piecewise with base point g.
struct Boundary2D {
  std::vector<BoundaryPiece> pieces;
  // Keeps alive a support body converted on the fly (ellipsoid bases).
  std::shared_ptr<const SupportBody2D> owned;

  double area() const;
  Eigen::Vector2d centroid() const;
  Eigen::Matrix2d second_moment() const;

  // Integral of kappa^{p/(2+p)} <x - g, N>^{-2(p-1)/(2+p)} over the curved
  // pieces plus the flat-piece contribution, which is 0 for p > 0 and p < -2,
  // 2 * |triangle(g, a, b)| summed over edges at p = 0, and divergent for
  // -2 < p < 0 whenever an edge is present (reported through `infinite`).
  double asp(double p, const Eigen::Vector2d& g, bool& infinite) const;

  bool has_edges(double min_length = 1e-12) const;
  double edge_length() const;
  double curve_length() const;
};

// Boundary of base intersected with R*B (ball centered at the origin).
// Assumes the intersection is proper, i.e. inradius < R < circumradius.
Boundary2D intersection_boundary(const ConvexBody& base, double R);

// Boundary of conv(base union R*B), proper case min support < R < max support.
Boundary2D hull_boundary(const ConvexBody& base, double R);

// Whole boundary of a planar body as pieces.
Boundary2D body_boundary(const ConvexBody& body);

// Boundary of the Minkowski sum of a convex polygon (counterclockwise
// vertices) with eps*B: edges shifted outward plus corner arcs.
Boundary2D outer_parallel_boundary(const Eigen::MatrixXd& ccw_vertices, double eps);

// Boundary of a box with corners rounded at radius eps (the Minkowski sum of
// the shrunken box with eps*B); requires eps < min half-width.
Boundary2D rounded_box_boundary(double half_x, double half_y, double eps);

}  // namespace affsurf
