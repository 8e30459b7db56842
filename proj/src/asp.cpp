#include "affsurf/asp.hpp"

#include <cmath>
#include <limits>
#include <mutex>

#include "affsurf/boundary2d.hpp"
#include "affsurf/errors.hpp"
#include "affsurf/rng.hpp"
#include "affsurf/util.hpp"

namespace affsurf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void reject_p_equals_minus_n(int n, double p) {
  if (p == -static_cast<double>(n)) throw PEqualsMinusN();
}

// Trapezoidal sum of the support-function integrand on m equispaced nodes.
// The trapezoid rule on a periodic integrand converges spectrally, so the
// half-grid comparison is a sound error gauge.
double quadrature_sum(const SupportBody2D& body, double p, int m) {
  const double ck = curvature_exponent(2, p);
  const double w = weight_exponent(2, p);
  double s = 0.0;
  if (m == body.grid_size()) {
    for (int j = 0; j < m; ++j) {
      double r = body.curvature_radius_node(j);
      if (!(r > 0.0)) throw NonConvexBody("curvature radius must stay positive");
      s += std::pow(r, 1.0 - ck) * std::pow(body.h()[j], -w);
    }
  } else {
    for (int j = 0; j < m; ++j) {
      double t = 2.0 * kPi * j / m;
      double h = body.h_at(t);
      double r = body.curvature_radius_at(t);
      if (!(r > 0.0)) throw NonConvexBody("curvature radius must stay positive");
      s += std::pow(r, 1.0 - ck) * std::pow(h, -w);
    }
  }
  return s * 2.0 * kPi / m;
}

// One-time anchors: the disk must integrate to 2 pi at p = 1 and to n|K| at
// p = 0, and the (2,1) ellipse must match its closed form. Catches exponent
// slips in the reparameterized integrand before they reach callers.
void run_quadrature_self_check() {
  auto disk = SupportBody2D::disk(1.0, 512);
  if (std::abs(quadrature_sum(disk, 1.0, 512) - 2.0 * kPi) > 1e-10)
    throw DomainError("support quadrature failed the disk anchor at p = 1");
  if (std::abs(quadrature_sum(disk, 0.0, 512) - 2.0 * disk.area()) > 1e-10)
    throw DomainError("support quadrature failed the area anchor at p = 0");
  auto ell = SupportBody2D::ellipse(2.0, 1.0, 0.0, 1024);
  double want = std::pow(2.0, 1.0 / 3.0) * 2.0 * kPi;
  if (std::abs(quadrature_sum(ell, 1.0, 1024) - want) > 1e-8)
    throw DomainError("support quadrature failed the ellipse anchor at p = 1");
}

void ensure_self_checked() {
  static std::once_flag flag;
  std::call_once(flag, run_quadrature_self_check);
}

AspValue polytope_value(const ConvexBody& body, double p) {
  const int n = body.dim();
  AspValue out;
  out.p = p;
  out.method = "closed_form";
  if (p > 0.0 || p < -static_cast<double>(n)) {
    out.value = 0.0;
  } else if (p == 0.0) {
    out.value = n * volume(body);
  } else {
    out.value = kInf;
    out.infinite = true;
  }
  return out;
}

}  // namespace

AspValue asp_closed_form(const ConvexBody& body, double p) {
  const int n = body.dim();
  reject_p_equals_minus_n(n, p);
  const double nw = n * unit_ball_volume(n);
  const double ae = affine_exponent(n, p);
  AspValue out;
  out.p = p;
  out.method = "closed_form";
  if (const auto* b = body.get_if<Ball>()) {
    out.value = std::pow(b->radius, n * ae) * nw;
    return out;
  }
  if (const auto* e = body.get_if<Ellipsoid>()) {
    out.value = std::pow(e->shape.determinant(), -0.5 * ae) * nw;
    return out;
  }
  throw InvalidInput("closed form covers balls and ellipsoids only");
}

AspValue asp_quadrature_2d(const SupportBody2D& body, double p, int m) {
  reject_p_equals_minus_n(2, p);
  ensure_self_checked();
  Eigen::Vector2d g = body.centroid_integral() / body.area();
  if (g.norm() > 1e-8 * 2.0 * body.max_h())
    throw NotCentered("support quadrature expects the centroid at the origin");
  if (m <= 0) m = body.grid_size();
  if (m % 2 != 0) ++m;
  AspValue out;
  out.p = p;
  out.method = "quadrature2d";
  out.value = quadrature_sum(body, p, m);
  out.error_estimate = std::abs(out.value - quadrature_sum(body, p, m / 2));
  return out;
}

AspValue asp_cap_lower_bound(const ConvexBody& body, double R, double p, long samples,
                             std::uint64_t seed, CapBoundDetail* detail) {
  const int n = body.dim();
  if (!(R > 0.0)) throw InvalidInput("cap radius must be positive");
  if (!(p >= 0.0) || !(p <= static_cast<double>(n)))
    throw POutOfRange("cap bound needs p in [0, n]");
  if (samples < 1) throw InvalidInput("need at least one sample");
  Rng rng(seed, 5);
  long hits = 0;
  for (long i = 0; i < samples; ++i)
    if (radial(body, rng.sphere_direction(n)) > R) ++hits;
  const double sigma = static_cast<double>(hits) / static_cast<double>(samples);
  const double sigma_err =
      std::sqrt(std::max(0.0, sigma * (1.0 - sigma)) / static_cast<double>(samples));
  const double shell = n * unit_ball_volume(n) * std::pow(R, n - 1);
  const double exponent = 2.0 * n * p / (n + p) - 1.0;
  const double factor = std::pow(1.0 / R, exponent);
  if (detail) {
    detail->sigma = sigma;
    detail->sigma_std_error = sigma_err;
    detail->mu_RO = sigma * shell;
  }
  AspValue out;
  out.p = p;
  out.method = "spherical_cap_lower_bound";
  out.value = sigma * shell * factor;
  out.error_estimate = sigma_err * shell * factor;
  out.seed = seed;
  return out;
}

AspValue asp(const ConvexBody& body, double p) {
  const int n = body.dim();
  reject_p_equals_minus_n(n, p);
  if (body.get_if<Ball>() || body.get_if<Ellipsoid>()) return asp_closed_form(body, p);
  if (body.get_if<HPolytope>() || body.get_if<VPolytope>()) return polytope_value(body, p);
  if (const auto* s = body.get_if<SupportBody2D>()) return asp_quadrature_2d(*s, p);
  if (body.get_if<BallIntersection>() || body.get_if<BallHull>()) {
    if (n != 2) throw Unsupported("piecewise boundary integration needs dimension 2");
    Boundary2D bd = body_boundary(body);
    AspValue out;
    out.p = p;
    out.method = "quadrature2d";
    bool infinite = false;
    out.value = bd.asp(p, bd.centroid(), infinite);
    out.infinite = infinite;
    if (infinite) out.value = kInf;
    return out;
  }
  throw Unsupported("no evaluation rule for this representation");
}

}  // namespace affsurf
