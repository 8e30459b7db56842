#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace affsurf {

// Smooth planar convex body stored through its support function h sampled on
// the uniform angle grid theta_j = 2*pi*j/m, together with first and second
// derivative samples. Derivatives fall back to trigonometric (FFT)
// differentiation when no analytic expressions are supplied, and a truncated
// Fourier series of h allows evaluation between grid nodes.
//
// Invariants: h > 0 (origin interior) and h + h'' > 0 (strict convexity,
// h + h'' is the radius of curvature at normal angle theta).
class SupportBody2D {
 public:
  static constexpr int kDefaultGrid = 2048;

  static SupportBody2D from_samples(const Eigen::VectorXd& h);
  static SupportBody2D from_function(const std::function<double(double)>& h,
                                     const std::function<double(double)>& dh,
                                     const std::function<double(double)>& ddh,
                                     int m = kDefaultGrid);
  // h(theta) = sqrt(u' M u), the support function of { x : x' M^{-1} x <= 1 }.
  static SupportBody2D from_shape_matrix(const Eigen::Matrix2d& M, int m = kDefaultGrid);
  static SupportBody2D disk(double r, int m = kDefaultGrid);
  // Semi-axes a (along angle `angle`) and b.
  static SupportBody2D ellipse(double a, double b, double angle = 0.0, int m = kDefaultGrid);

  int grid_size() const { return static_cast<int>(h_.size()); }
  const Eigen::VectorXd& h() const { return h_; }
  const Eigen::VectorXd& dh() const { return dh_; }
  const Eigen::VectorXd& ddh() const { return ddh_; }

  double node_angle(int j) const;

  // Evaluation between nodes through the Fourier series of h.
  double h_at(double theta) const;
  double dh_at(double theta) const;
  double ddh_at(double theta) const;

  // Boundary point with outward normal angle theta: x = h u + h' u_perp.
  Eigen::Vector2d boundary_point(double theta) const;
  Eigen::Vector2d boundary_point_node(int j) const;

  double curvature_radius_node(int j) const { return h_[j] + ddh_[j]; }
  double curvature_radius_at(double theta) const { return h_at(theta) + ddh_at(theta); }
  // Highest retained Fourier mode; governs quadrature panel counts.
  int max_mode() const { return modes_.empty() ? 0 : modes_.back(); }
  double min_curvature_radius() const;
  double min_h() const { return h_.minCoeff(); }
  double max_h() const { return h_.maxCoeff(); }

  // Exact area (1/2) closed-integral of h (h + h'') d theta, evaluated by the
  // periodic trapezoid rule (spectrally accurate).
  double area() const;
  // Integral of x over the body and integral of x x' over the body.
  Eigen::Vector2d centroid_integral() const;
  Eigen::Matrix2d second_moment() const;

  // Body translated by `shift`; exact, h(u) + <shift, u> on the same grid.
  SupportBody2D translated(const Eigen::Vector2d& shift) const;

  // Throws NonConvexBody / OriginNotInterior when invariants fail.
  void validate() const;

 private:
  SupportBody2D() = default;
  void build_series();

  Eigen::VectorXd h_, dh_, ddh_;
  std::vector<int> modes_;
  std::vector<std::complex<double>> coeff_;
};

}  // namespace affsurf
