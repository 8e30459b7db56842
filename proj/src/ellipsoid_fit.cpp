#include "affsurf/ellipsoid_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "affsurf/errors.hpp"
#include "affsurf/rng.hpp"
#include "affsurf/sampling.hpp"
#include "affsurf/util.hpp"

namespace affsurf {

namespace {

// Point set feeding the enclosing-ellipsoid ascent: exact vertices whenever
// the representation stores them, box corners, and a dense boundary sample
// for everything else (planar bodies sample exactly, higher dimensions use
// seeded directions).
Eigen::MatrixXd fit_points(const ConvexBody& body) {
  const int n = body.dim();
  if (const auto* vp = body.get_if<VPolytope>()) return vp->vertices;
  if (const auto* hp = body.get_if<HPolytope>()) {
    if (hp->vertices.rows() > 0) return hp->vertices;
    if (hp->is_box && n <= 20) {
      Eigen::MatrixXd corners(1 << n, n);
      for (int mask = 0; mask < (1 << n); ++mask)
        for (int j = 0; j < n; ++j)
          corners(mask, j) = (mask >> j & 1) ? hp->box_hi[j] : hp->box_lo[j];
      return corners;
    }
  }
  if (n == 2) return boundary_polygon(body, 2048);
  if (!(inradius_origin(body) > 0.0))
    throw Unsupported("boundary sampling needs the origin strictly interior");
  const int m = 4096;
  Eigen::MatrixXd pts(m, n);
  Rng rng(0xe11e5ULL, 7);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd u = rng.sphere_direction(n);
    pts.row(i) = radial(body, u) * u;
  }
  return pts;
}

struct Mvee {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;
  double gap = 0.0;
  int iterations = 0;
};

// Khachiyan ascent on the simplex of point weights, with away steps. The
// lifted Gram matrix M = sum w_i q_i q_i' (q = (v;1)) has the property that
// q' M^-1 q - 1 is the squared gauge of v in the weight ellipsoid, so the
// optimality condition is max_i g_i = n+1.
Mvee khachiyan(const Eigen::MatrixXd& pts, double tol) {
  const int m = static_cast<int>(pts.rows());
  const int n = static_cast<int>(pts.cols());
  if (m < n + 1) throw DegenerateBody("too few points for an enclosing ellipsoid");
  {
    Eigen::MatrixXd centered = pts.rowwise() - pts.colwise().mean();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(centered);
    qr.setThreshold(1e-10);
    if (qr.rank() < n) throw DegenerateBody("point set is not full-dimensional");
  }

  const int d = n + 1;
  Eigen::MatrixXd q(m, d);
  q.leftCols(n) = pts;
  q.col(n).setOnes();
  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / m);

  const int max_iter = 100000;
  double gap = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    Eigen::MatrixXd M = q.transpose() * w.asDiagonal() * q;
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success)
      throw DegenerateBody("weight matrix lost positive definiteness");
    Eigen::VectorXd g =
        (llt.solve(q.transpose()).transpose().cwiseProduct(q)).rowwise().sum();

    int j = 0, a = -1;
    for (int i = 1; i < m; ++i)
      if (g[i] > g[j]) j = i;
    for (int i = 0; i < m; ++i)
      if (w[i] > 0.0 && (a < 0 || g[i] < g[a])) a = i;

    gap = g[j] / d - 1.0;
    if (gap <= tol) break;

    const double down = a >= 0 ? 1.0 - g[a] / d : 0.0;
    if (a >= 0 && down > gap && g[a] > 1.0 + 1e-12 && w[a] < 1.0) {
      double beta = (d - g[a]) / (d * (g[a] - 1.0));
      beta = std::min(beta, w[a] / (1.0 - w[a]));
      w *= 1.0 + beta;  // w' = (1+beta) w - beta e_a
      w[a] = std::max(w[a] - beta, 0.0);
    } else {
      double gamma = (g[j] - d) / (d * (g[j] - 1.0));
      w *= 1.0 - gamma;
      w[j] += gamma;
    }
    w /= w.sum();
  }
  if (gap > tol) throw NotConverged("enclosing-ellipsoid ascent did not reach tolerance");

  Mvee out;
  out.center = pts.transpose() * w;
  Eigen::MatrixXd S =
      pts.transpose() * w.asDiagonal() * pts - out.center * out.center.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success) throw DegenerateBody("optimal ellipsoid is flat");
  out.shape = llt.solve(Eigen::MatrixXd::Identity(n, n)) / n;
  // Rescale so the farthest point lies exactly on the boundary; containment
  // of the whole set is then exact rather than tol-accurate.
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd z = pts.row(i).transpose() - out.center;
    worst = std::max(worst, z.dot(out.shape * z));
  }
  out.shape /= worst;
  out.gap = gap;
  out.iterations = iter;
  return out;
}

// Smallest lambda with E subset c + lambda (K - c), from facet data when the
// body carries it and from a support-function grid otherwise.
double enclosing_ratio(const ConvexBody& body, const Ellipsoid& e) {
  const int n = body.dim();
  Eigen::LLT<Eigen::MatrixXd> llt(e.shape);
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  auto ratio_for = [&](const Eigen::VectorXd& a, double b) {
    double denom = b - a.dot(e.center);
    if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
    return std::sqrt(a.dot(inv * a)) / denom;
  };
  const Eigen::MatrixXd* normals = nullptr;
  const Eigen::VectorXd* offsets = nullptr;
  if (const auto* hp = body.get_if<HPolytope>()) {
    normals = &hp->normals;
    offsets = &hp->offsets;
  } else if (const auto* vp = body.get_if<VPolytope>()) {
    if (vp->normals.rows() > 0) {
      normals = &vp->normals;
      offsets = &vp->offsets;
    }
  }
  double lam = 0.0;
  if (normals) {
    for (int i = 0; i < normals->rows(); ++i)
      lam = std::max(lam, ratio_for(normals->row(i), (*offsets)[i]));
    return lam;
  }
  if (n == 2) {
    const int m = 4096;
    for (int i = 0; i < m; ++i) {
      double t = 2.0 * kPi * i / m;
      Eigen::Vector2d u(std::cos(t), std::sin(t));
      lam = std::max(lam, ratio_for(u, support(body, u)));
    }
    return lam;
  }
  Rng rng(0xe11e5ULL, 9);
  for (int i = 0; i < 4096; ++i) {
    Eigen::VectorXd u = rng.sphere_direction(n);
    lam = std::max(lam, ratio_for(u, support(body, u)));
  }
  return lam;
}

// Smallest lambda with K subset c + lambda (E - c), evaluated on the same
// point set that witnessed the fit.
double inscribed_ratio(const Eigen::MatrixXd& pts, const Ellipsoid& e) {
  double lam = 0.0;
  for (int i = 0; i < pts.rows(); ++i) {
    Eigen::VectorXd z = pts.row(i).transpose() - e.center;
    lam = std::max(lam, std::sqrt(z.dot(e.shape * z)));
  }
  return lam;
}

}  // namespace

EllipsoidFit loewner_ellipsoid(const ConvexBody& body, double tol) {
  if (const auto* b = body.get_if<Ball>()) {
    Ellipsoid e{b->center, Eigen::MatrixXd::Identity(body.dim(), body.dim()) /
                               (b->radius * b->radius)};
    return EllipsoidFit{e, "loewner", 1.0, 0.0, 0};
  }
  if (const auto* el = body.get_if<Ellipsoid>())
    return EllipsoidFit{*el, "loewner", 1.0, 0.0, 0};
  Eigen::MatrixXd pts = fit_points(body);
  Mvee fit = khachiyan(pts, tol);
  EllipsoidFit out;
  out.ellipsoid = Ellipsoid{fit.center, fit.shape};
  out.kind = "loewner";
  out.gap = fit.gap;
  out.iterations = fit.iterations;
  out.containment_ratio = enclosing_ratio(body, out.ellipsoid);
  return out;
}

EllipsoidFit john_ellipsoid(const ConvexBody& body, double tol) {
  const int n = body.dim();
  if (const auto* b = body.get_if<Ball>()) {
    Ellipsoid e{b->center,
                Eigen::MatrixXd::Identity(n, n) / (b->radius * b->radius)};
    return EllipsoidFit{e, "john", 1.0, 0.0, 0};
  }
  if (const auto* el = body.get_if<Ellipsoid>())
    return EllipsoidFit{*el, "john", 1.0, 0.0, 0};

  ConvexBody dual = polar(body);
  Mvee fit = khachiyan(fit_points(dual), tol);
  ConvexBody enclosing(ConvexBody::Rep(Ellipsoid{fit.center, fit.shape}), n);
  ConvexBody inner = polar(enclosing);
  const auto* e = inner.get_if<Ellipsoid>();
  if (!e) throw DegenerateBody("polar of the enclosing ellipsoid is not an ellipsoid");

  EllipsoidFit out;
  out.ellipsoid = *e;
  out.kind = "john";
  out.gap = fit.gap;
  out.iterations = fit.iterations;
  out.containment_ratio = inscribed_ratio(fit_points(body), out.ellipsoid);
  return out;
}

IsotropicCertificate isotropic_position(const ConvexBody& body, long samples,
                                        std::uint64_t seed) {
  const int n = body.dim();
  Moments mo = moments(body, samples, seed);
  if (!(mo.volume > 0.0)) throw DegenerateBody("body volume vanished");

  Eigen::VectorXd g;
  Eigen::MatrixXd cov;
  std::string method;
  long used = samples;
  if (mo.method == "exact") {
    g = mo.centroid;
    cov = mo.second_moment / mo.volume - g * g.transpose();
    method = "exact";
  } else {
    used = std::min<long>(samples, 20000);
    Eigen::MatrixXd pts = hit_and_run(body, used, 50, seed);
    g = pts.colwise().mean().transpose();
    Eigen::MatrixXd centered = pts.rowwise() - g.transpose();
    cov = centered.transpose() * centered / static_cast<double>(used);
    method = "hit_and_run";
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (!(ev.minCoeff() > 1e-12 * std::max(ev.maxCoeff(), 1e-300)))
    throw SingularCovariance("covariance matrix is numerically singular");
  Eigen::MatrixXd whiten = es.eigenvectors() *
                           ev.cwiseSqrt().cwiseInverse().asDiagonal() *
                           es.eigenvectors().transpose();
  const double det_cov = ev.prod();
  const double s = std::pow(std::sqrt(det_cov) / mo.volume, 1.0 / n);

  IsotropicCertificate cert;
  cert.map.linear = s * whiten;
  cert.map.shift = -s * (whiten * g);
  cert.L = s;
  cert.method = method;
  cert.samples = used;
  cert.seed = seed;

  // Residuals from an independent estimate of the same moments.
  const std::uint64_t seed2 = seed ^ 0x9e3779b97f4a7c15ULL;
  double v2;
  Eigen::VectorXd g2;
  Eigen::MatrixXd cov2;
  if (method == "exact") {
    v2 = mo.volume;
    g2 = g;
    cov2 = cov;
  } else {
    Moments check = moments(body, samples, seed2);
    v2 = check.volume;
    Eigen::MatrixXd pts = hit_and_run(body, used, 50, seed2);
    g2 = pts.colwise().mean().transpose();
    Eigen::MatrixXd centered = pts.rowwise() - g2.transpose();
    cov2 = centered.transpose() * centered / static_cast<double>(used);
  }
  cert.volume_residual = std::abs(cert.map.abs_det() * v2 - 1.0);
  Eigen::MatrixXd image_cov = s * s * (whiten * cov2 * whiten);
  cert.covariance_residual =
      (image_cov - s * s * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  return cert;
}

Eigen::VectorXd santalo_point(const ConvexBody& body, double tol) {
  if (body.dim() != 2) throw Unsupported("polar-volume minimization is planar only");
  auto objective = [&](const Eigen::Vector2d& sp) {
    try {
      return volume(polar(translate(body, Eigen::VectorXd(-sp))));
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  Eigen::Vector2d c0 = centroid(body);
  double scale = inradius_origin(translate(body, Eigen::VectorXd(-c0)));
  if (!(scale > 0.0)) throw DegenerateBody("centroid is not interior");

  auto nelder_mead = [&](const Eigen::Vector2d& start, double step) {
    std::array<Eigen::Vector2d, 3> simplex = {start, start + Eigen::Vector2d(step, 0.0),
                                              start + Eigen::Vector2d(0.0, step)};
    std::array<double, 3> f;
    for (int i = 0; i < 3; ++i) f[i] = objective(simplex[i]);

    for (int it = 0; it < 500; ++it) {
      std::array<int, 3> ord = {0, 1, 2};
      std::sort(ord.begin(), ord.end(), [&](int a, int b) { return f[a] < f[b]; });
      const int lo = ord[0], mid = ord[1], hi = ord[2];
      double diam = std::max((simplex[lo] - simplex[mid]).norm(),
                             (simplex[lo] - simplex[hi]).norm());
      if (diam < 1e-12 * (1.0 + c0.norm() + scale)) break;

      Eigen::Vector2d cen = 0.5 * (simplex[lo] + simplex[mid]);
      Eigen::Vector2d refl = cen + (cen - simplex[hi]);
      double fr = objective(refl);
      if (fr < f[lo]) {
        Eigen::Vector2d exp_pt = cen + 2.0 * (cen - simplex[hi]);
        double fe = objective(exp_pt);
        if (fe < fr) {
          simplex[hi] = exp_pt;
          f[hi] = fe;
        } else {
          simplex[hi] = refl;
          f[hi] = fr;
        }
      } else if (fr < f[mid]) {
        simplex[hi] = refl;
        f[hi] = fr;
      } else {
        Eigen::Vector2d con = cen + 0.5 * ((fr < f[hi] ? refl : simplex[hi]) - cen);
        double fc = objective(con);
        if (fc < std::min(fr, f[hi])) {
          simplex[hi] = con;
          f[hi] = fc;
        } else {
          for (int i : {mid, hi}) {
            simplex[i] = simplex[lo] + 0.5 * (simplex[i] - simplex[lo]);
            f[i] = objective(simplex[i]);
          }
        }
      }
    }
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (f[i] < f[best]) best = i;
    return simplex[best];
  };

  Eigen::Vector2d s = nelder_mead(c0, 0.25 * scale);
  s = nelder_mead(s, 1e-3 * scale);  // polish with a tight simplex

  Eigen::VectorXd bary = centroid(polar(translate(body, Eigen::VectorXd(-s))));
  if (bary.norm() > tol)
    throw NotConverged("polar barycenter does not vanish at the located point");
  return s;
}

double volume_product(const ConvexBody& body) {
  return volume(body) * volume(polar(body));
}

}  // namespace affsurf
