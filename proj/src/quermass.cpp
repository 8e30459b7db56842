#include "affsurf/quermass.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "affsurf/boundary2d.hpp"
#include "affsurf/errors.hpp"
#include "affsurf/rng.hpp"
#include "affsurf/util.hpp"

namespace affsurf {

namespace {

double binom(int n, int k) {
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out *= static_cast<double>(n - k + j) / j;
  return out;
}

// Euclidean distance from x to conv(rows of V) by Frank-Wolfe: the linear
// subproblem over a polytope is solved by picking the best vertex, and the
// step size comes from exact line search on the quadratic objective.
double distance_to_hull(const Eigen::MatrixXd& V, const Eigen::VectorXd& x, int iterations) {
  Eigen::Index best0;
  (V * x).maxCoeff(&best0);
  Eigen::VectorXd y = V.row(best0).transpose();
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd g = x - y;
    Eigen::Index best;
    (V * g).maxCoeff(&best);
    Eigen::VectorXd d = V.row(best).transpose() - y;
    double denom = d.squaredNorm();
    if (denom <= 1e-30) break;
    double gamma = std::clamp(g.dot(d) / denom, 0.0, 1.0);
    if (gamma <= 0.0) break;
    y += gamma * d;
  }
  return (x - y).norm();
}

// Distance from x to the ellipsoid (y - c)' A (y - c) <= 1. In the eigenbasis
// of A the projection is y_i = z_i / (1 + mu a_i) with mu solving
// sum a_i z_i^2 / (1 + mu a_i)^2 = 1, a decreasing function of mu.
double distance_to_ellipsoid(const Ellipsoid& e, const Eigen::VectorXd& x,
                             const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& eig) {
  Eigen::VectorXd z = eig.eigenvectors().transpose() * (x - e.center);
  const Eigen::VectorXd& a = eig.eigenvalues();
  auto level = [&](double mu) {
    double s = 0.0;
    for (int i = 0; i < z.size(); ++i) {
      double d = 1.0 + mu * a[i];
      s += a[i] * z[i] * z[i] / (d * d);
    }
    return s;
  };
  if (level(0.0) <= 1.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (level(hi) > 1.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (level(mid) > 1.0 ? lo : hi) = mid;
  }
  double mu = 0.5 * (lo + hi);
  double dist2 = 0.0;
  for (int i = 0; i < z.size(); ++i) {
    double d = 1.0 + mu * a[i];
    double diff = z[i] - z[i] / d;
    dist2 += diff * diff;
  }
  return std::sqrt(dist2);
}

std::vector<double> default_grid(int n) {
  std::vector<double> t;
  for (int j = 1; j <= n + 1; ++j) t.push_back(0.1 * j);
  return t;
}

}  // namespace

SteinerFit steiner_fit(const ConvexBody& body, std::vector<double> t_grid, long samples,
                       std::uint64_t seed) {
  const int n = body.dim();
  if (n < 2 || n > 3) throw Unsupported("Steiner fit covers planar and 3-D bodies");
  if (t_grid.empty()) t_grid = default_grid(n);

  std::set<double> distinct;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw IllConditionedGrid("Steiner grid values must be positive");
    distinct.insert(t);
  }
  if (static_cast<int>(distinct.size()) < n + 1)
    throw IllConditionedGrid("Steiner grid needs at least n+1 distinct values");

  SteinerFit fit;
  fit.body_id = body.kind();
  fit.t_grid = t_grid;
  fit.method = "exact";
  const int m = static_cast<int>(t_grid.size());
  fit.volumes.resize(m);
  fit.volume_errors.assign(m, 0.0);

  if (n == 2) {
    const double area = volume(body);
    const double perimeter = body_boundary(body).curve_length();
    for (int i = 0; i < m; ++i) {
      double t = t_grid[i];
      fit.volumes[i] = area + perimeter * t + kPi * t * t;
    }
  } else if (const auto* b = body.get_if<Ball>()) {
    for (int i = 0; i < m; ++i)
      fit.volumes[i] = unit_ball_volume(3) * std::pow(b->radius + t_grid[i], 3);
  } else if (const auto* hp = body.get_if<HPolytope>(); hp != nullptr && hp->is_box) {
    Eigen::VectorXd s = hp->box_hi - hp->box_lo;
    const double vol = s.prod();
    const double surf = 2.0 * (s[0] * s[1] + s[0] * s[2] + s[1] * s[2]);
    const double edges = 4.0 * s.sum();
    for (int i = 0; i < m; ++i) {
      double t = t_grid[i];
      fit.volumes[i] = vol + surf * t + 0.25 * kPi * edges * t * t +
                       unit_ball_volume(3) * t * t * t;
    }
  } else {
    fit.method = "monte_carlo";
    const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
    auto [lo, hi] = bounding_box(body);

    const auto* el = body.get_if<Ellipsoid>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    Eigen::MatrixXd vertices;
    if (el) {
      eig.compute(el->shape);
    } else if (const auto* vp = body.get_if<VPolytope>()) {
      vertices = vp->vertices;
    } else if (const auto* h3 = body.get_if<HPolytope>();
               h3 != nullptr && h3->vertices.rows() > 0) {
      vertices = h3->vertices;
    } else {
      throw Unsupported("no distance oracle for this 3-D representation");
    }

    Rng rng(seed, 17);
    for (int i = 0; i < m; ++i) {
      double t = t_grid[i];
      Eigen::VectorXd box_lo = lo.array() - t;
      Eigen::VectorXd box_hi = hi.array() + t;
      double box_vol = (box_hi - box_lo).prod();
      long hits = 0;
      for (long s = 0; s < samples; ++s) {
        Eigen::VectorXd x(3);
        for (int d = 0; d < 3; ++d) x[d] = rng.uniform(box_lo[d], box_hi[d]);
        double dist = el ? distance_to_ellipsoid(*el, x, eig)
                         : distance_to_hull(vertices, x, 128);
        if (dist <= t) ++hits;
      }
      double frac = static_cast<double>(hits) / samples;
      fit.volumes[i] = frac * box_vol;
      fit.volume_errors[i] = box_vol * std::sqrt(frac * (1.0 - frac) / samples);
    }
    (void)t_max;
  }

  // Column-scaled Vandermonde least squares for the W coefficients.
  Eigen::MatrixXd A(m, n + 1);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) A(i, k) = binom(n, k) * std::pow(t_grid[i], k);
  Eigen::VectorXd scale(n + 1);
  for (int k = 0; k <= n; ++k) scale[k] = A.col(k).cwiseAbs().maxCoeff();
  Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  Eigen::VectorXd vols = Eigen::VectorXd::Map(fit.volumes.data(), m);
  Eigen::VectorXd w = scale.cwiseInverse().asDiagonal() *
                      As.colPivHouseholderQr().solve(vols);
  fit.W.assign(w.data(), w.data() + n + 1);
  fit.residual = (A * w - vols).cwiseAbs().maxCoeff();
  return fit;
}

HomogeneityFit homogeneity_degree(const ConvexBody& body, ExtremalKind kind, double p,
                                  const std::vector<double>& alphas,
                                  const ExtremalConfig& config) {
  if (alphas.size() < 3) throw InvalidInput("degree fit needs at least three scale factors");
  std::set<double> distinct;
  for (double a : alphas) {
    if (!(a > 0.0)) throw InvalidInput("scale factors must be positive");
    distinct.insert(a);
  }
  if (distinct.size() < 3) throw InvalidInput("degree fit needs three distinct scale factors");

  const int n = body.dim();
  auto value_at = [&](double alpha) {
    ConvexBody scaled = apply_affine(AffineMap::scaling(n, alpha), body);
    double v;
    if (auto closed = closed_form_extremal(scaled, kind, p)) {
      v = closed->value;
    } else {
      switch (kind) {
        case ExtremalKind::kInnerMax:
          v = estimate_IS(scaled, p, config).value;
          break;
        case ExtremalKind::kOuterMax:
          v = estimate_OS(scaled, p, config).value;
          break;
        case ExtremalKind::kOuterMin:
          v = estimate_os(scaled, p, config).value;
          break;
        default:
          v = 0.0;
      }
    }
    if (!std::isfinite(v) || !(v > 0.0))
      throw POutOfRange("scaling degree needs a finite positive extremal value");
    return v;
  };

  const int m = static_cast<int>(alphas.size());
  Eigen::VectorXd xs(m), ys(m);
  for (int i = 0; i < m; ++i) {
    xs[i] = std::log(alphas[i]);
    ys[i] = std::log(value_at(alphas[i]));
  }
  double xbar = xs.mean();
  double ybar = ys.mean();
  double sxx = (xs.array() - xbar).square().sum();
  double sxy = ((xs.array() - xbar) * (ys.array() - ybar)).sum();

  HomogeneityFit fit;
  fit.kind = kind;
  fit.p = p;
  fit.degree = sxy / sxx;
  fit.expected = n * affine_exponent(n, p);
  fit.residual =
      (ys.array() - ybar - fit.degree * (xs.array() - xbar)).abs().maxCoeff();
  return fit;
}

std::vector<NonQuermassReport> non_quermass_report(const std::vector<int>& n_list) {
  std::vector<NonQuermassReport> out;
  for (int n : n_list) {
    if (n < 2 || n > 6) throw InvalidInput("quermassintegral comparison covers n in 2..6");
    NonQuermassReport rep;
    rep.n = n;
    rep.degree = static_cast<double>(n) * (n - 1) / (n + 1);
    rep.integer_degree = std::abs(rep.degree - std::round(rep.degree)) < 1e-12;

    // Best degree-n polynomial fit to the normalized profile alpha^degree.
    const int m = 33;
    Eigen::VectorXd a(m), y(m);
    for (int i = 0; i < m; ++i) {
      a[i] = 0.5 + 1.5 * i / (m - 1);
      y[i] = std::pow(a[i], rep.degree);
    }
    Eigen::MatrixXd M(m, n + 1);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k <= n; ++k) M(i, k) = std::pow(a[i], k);
    Eigen::VectorXd coef = M.colPivHouseholderQr().solve(y);
    rep.fit_residual = (M * coef - y).cwiseAbs().maxCoeff();
    rep.non_quermass = !rep.integer_degree && rep.fit_residual > 1e-6;
    out.push_back(rep);
  }
  return out;
}

}  // namespace affsurf
