#include "affsurf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "affsurf/boundary2d.hpp"
#include "affsurf/errors.hpp"
#include "affsurf/rng.hpp"
#include "affsurf/util.hpp"

namespace affsurf {

namespace {

Eigen::Vector2d unit2(double t) { return {std::cos(t), std::sin(t)}; }

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// ---------------------------------------------------------------------------
// Polygon helpers (counterclockwise vertex rows).

double poly_area(const Eigen::MatrixXd& v) {
  const int k = static_cast<int>(v.rows());
  double s = 0.0;
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d a = v.row(i), b = v.row((i + 1) % k);
    s += cross2(a, b);
  }
  return 0.5 * s;
}

Eigen::Vector2d poly_first_moment(const Eigen::MatrixXd& v) {
  const int k = static_cast<int>(v.rows());
  Eigen::Vector2d s = Eigen::Vector2d::Zero();
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d a = v.row(i), b = v.row((i + 1) % k);
    s += cross2(a, b) * (a + b);
  }
  return s / 6.0;
}

Eigen::Matrix2d poly_second_moment(const Eigen::MatrixXd& v) {
  const int k = static_cast<int>(v.rows());
  Eigen::Matrix2d s = Eigen::Matrix2d::Zero();
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d a = v.row(i), b = v.row((i + 1) % k);
    double w = 0.5 * cross2(a, b);
    Eigen::Vector2d sum = a + b;
    s += (w / 12.0) * (a * a.transpose() + b * b.transpose() + sum * sum.transpose());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Small-dimension vertex enumeration for H-polytopes (n = 2, 3).

Eigen::MatrixXd enumerate_vertices(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  const double scale = b.cwiseAbs().maxCoeff() + 1.0;
  std::vector<Eigen::VectorXd> verts;
  // Iterate over all n-subsets of the m constraints.
  std::vector<int> comb(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Eigen::MatrixXd M(n, n);
      Eigen::VectorXd rhs(n);
      for (int i = 0; i < n; ++i) {
        M.row(i) = A.row(comb[i]);
        rhs[i] = b[comb[i]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (lu.rank() < n) return;
      Eigen::VectorXd x = lu.solve(rhs);
      if (((A * x - b).array() > 1e-9 * scale).any()) return;
      for (const auto& w : verts)
        if ((w - x).norm() < 1e-9 * scale) return;
      verts.push_back(x);
      return;
    }
    for (int i = start; i <= m - (n - depth); ++i) {
      comb[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  Eigen::MatrixXd out(static_cast<int>(verts.size()), n);
  for (std::size_t i = 0; i < verts.size(); ++i) out.row(static_cast<int>(i)) = verts[i];
  return out;
}

void sort_ccw(Eigen::MatrixXd& pts) {
  Eigen::Vector2d mean = pts.colwise().mean();
  std::vector<int> order(pts.rows());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return std::atan2(pts(i, 1) - mean.y(), pts(i, 0) - mean.x()) <
           std::atan2(pts(j, 1) - mean.y(), pts(j, 0) - mean.x());
  });
  Eigen::MatrixXd sorted(pts.rows(), 2);
  for (int i = 0; i < pts.rows(); ++i) sorted.row(i) = pts.row(order[i]);
  pts = sorted;
}

// ---------------------------------------------------------------------------
// 3-D facet machinery.

struct Facet3 {
  Eigen::Vector3d normal;
  double offset;
  std::vector<int> ring;  // vertex indices ordered around the facet
};

std::vector<Facet3> facets_from_vertices_3d(const Eigen::MatrixXd& v) {
  const int m = static_cast<int>(v.rows());
  const double scale = v.cwiseAbs().maxCoeff() + 1.0;
  std::vector<Facet3> facets;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        Eigen::Vector3d a = v.row(i), b = v.row(j), c = v.row(k);
        Eigen::Vector3d nrm = (b - a).cross(c - a);
        if (nrm.norm() < 1e-12 * scale * scale) continue;
        nrm.normalize();
        double d = nrm.dot(a);
        double lo = ((v * nrm).array() - d).minCoeff();
        double hi = ((v * nrm).array() - d).maxCoeff();
        bool below = hi < 1e-9 * scale;
        bool above = lo > -1e-9 * scale;
        if (!below && !above) continue;
        if (above) {
          nrm = -nrm;
          d = -d;
        }
        bool dup = false;
        for (const auto& f : facets)
          if ((f.normal - nrm).norm() < 1e-9 && std::abs(f.offset - d) < 1e-9 * scale) {
            dup = true;
            break;
          }
        if (dup) continue;
        Facet3 f;
        f.normal = nrm;
        f.offset = d;
        for (int t = 0; t < m; ++t)
          if (std::abs(nrm.dot(v.row(t)) - d) < 1e-9 * scale) f.ring.push_back(t);
        if (f.ring.size() < 3) continue;
        // Order the ring counterclockwise around the outward normal.
        Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
        for (int t : f.ring) centroid += v.row(t).transpose();
        centroid /= static_cast<double>(f.ring.size());
        Eigen::Vector3d e1 = (Eigen::Vector3d(v.row(f.ring[0])) - centroid).normalized();
        Eigen::Vector3d e2 = nrm.cross(e1);
        std::sort(f.ring.begin(), f.ring.end(), [&](int p, int q) {
          Eigen::Vector3d dp = Eigen::Vector3d(v.row(p)) - centroid;
          Eigen::Vector3d dq = Eigen::Vector3d(v.row(q)) - centroid;
          return std::atan2(dp.dot(e2), dp.dot(e1)) < std::atan2(dq.dot(e2), dq.dot(e1));
        });
        facets.push_back(std::move(f));
      }
  if (facets.size() < 4) throw DegenerateBody("vertex set does not span a 3-D body");
  return facets;
}

Moments polytope_moments_3d(const Eigen::MatrixXd& v, const std::vector<Facet3>& facets) {
  double vol = 0.0;
  Eigen::Vector3d first = Eigen::Vector3d::Zero();
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
  for (const auto& f : facets) {
    for (std::size_t t = 1; t + 1 < f.ring.size(); ++t) {
      Eigen::Vector3d p = v.row(f.ring[0]), q = v.row(f.ring[t]), r = v.row(f.ring[t + 1]);
      double w = p.dot(q.cross(r)) / 6.0;  // signed tetrahedron (0,p,q,r)
      vol += w;
      first += w * (p + q + r) / 4.0;
      Eigen::Vector3d s = p + q + r;
      second += (w / 20.0) * (p * p.transpose() + q * q.transpose() + r * r.transpose() +
                              s * s.transpose());
    }
  }
  if (!(vol > 0.0)) throw DegenerateBody("polytope has nonpositive volume");
  Moments mom;
  mom.volume = vol;
  mom.centroid = first / vol;
  mom.second_moment = second;
  mom.method = "exact";
  return mom;
}

// ---------------------------------------------------------------------------
// Cap slice integrals for balls: integrals of 1, z, z^2 and the transverse
// second moment over { x in r*B : zlo <= x.e <= zhi }, via the substitution
// z = r cos(phi) which keeps the integrand smooth.

struct SliceIntegrals {
  double vol = 0.0, z1 = 0.0, z2 = 0.0, perp = 0.0;
};

SliceIntegrals ball_slice(int n, double r, double zlo, double zhi) {
  SliceIntegrals out;
  zlo = std::max(zlo, -r);
  zhi = std::min(zhi, r);
  if (zhi <= zlo) return out;
  const double wn1 = unit_ball_volume(n - 1);
  double plo = std::acos(std::clamp(zhi / r, -1.0, 1.0));
  double phi = std::acos(std::clamp(zlo / r, -1.0, 1.0));
  auto rad = [&](double ph) { return r * std::sin(ph); };
  out.vol = integrate_gl64(plo, phi, [&](double ph) {
    return wn1 * std::pow(rad(ph), n - 1) * r * std::sin(ph);
  });
  out.z1 = integrate_gl64(plo, phi, [&](double ph) {
    return r * std::cos(ph) * wn1 * std::pow(rad(ph), n - 1) * r * std::sin(ph);
  });
  out.z2 = integrate_gl64(plo, phi, [&](double ph) {
    double z = r * std::cos(ph);
    return z * z * wn1 * std::pow(rad(ph), n - 1) * r * std::sin(ph);
  });
  out.perp = integrate_gl64(plo, phi, [&](double ph) {
    double rr = rad(ph);
    return (rr * rr / (n + 1)) * wn1 * std::pow(rr, n - 1) * r * std::sin(ph);
  });
  return out;
}

// Moments of Ball(c, r) intersected with R*B around the origin.
Moments lens_moments(int n, const Eigen::VectorXd& c, double r, double R) {
  const double m = c.norm();
  Moments mom;
  mom.method = "exact";
  if (m < 1e-14) {
    double rr = std::min(r, R);
    mom.volume = unit_ball_volume(n) * std::pow(rr, n);
    mom.centroid = Eigen::VectorXd::Zero(n);
    mom.second_moment =
        mom.volume * rr * rr / (n + 2) * Eigen::MatrixXd::Identity(n, n);
    return mom;
  }
  Eigen::VectorXd e = c / m;
  // Radical plane offset along e (from the origin).
  double zstar = (R * R - r * r + m * m) / (2.0 * m);
  // Lens = cap of R*B with z >= zstar plus cap of Ball(c,r) with z <= zstar.
  SliceIntegrals s1 = ball_slice(n, R, zstar, R);
  SliceIntegrals s2 = ball_slice(n, r, -r, zstar - m);  // in the c-centered frame
  double vol = s1.vol + s2.vol;
  if (!(vol > 0.0)) throw DegenerateBody("empty ball intersection");
  double z1 = s1.z1 + (s2.z1 + m * s2.vol);
  double z2 = s1.z2 + (s2.z2 + 2.0 * m * s2.z1 + m * m * s2.vol);
  double perp = s1.perp + s2.perp;
  mom.volume = vol;
  mom.centroid = (z1 / vol) * e;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) - e * e.transpose();
  mom.second_moment = z2 * e * e.transpose() + perp * P;
  return mom;
}

const Eigen::MatrixXd* polygon_rows(const ConvexBody& body) {
  if (const auto* vp = body.get_if<VPolytope>()) return &vp->vertices;
  if (const auto* hp = body.get_if<HPolytope>())
    if (body.dim() == 2 && hp->vertices.rows() > 0) return &hp->vertices;
  return nullptr;
}

}  // namespace

// ---------------------------------------------------------------------------
// AffineMap.

AffineMap AffineMap::identity(int n) {
  return {Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n)};
}

AffineMap AffineMap::scaling(int n, double s) {
  return {s * Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n)};
}

AffineMap AffineMap::linear_only(const Eigen::MatrixXd& T) {
  return {T, Eigen::VectorXd::Zero(T.rows())};
}

double AffineMap::abs_det() const {
  return std::abs(linear.determinant());
}

AffineMap AffineMap::inverse() const {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(linear);
  if (!lu.isInvertible()) throw SingularMap();
  Eigen::MatrixXd inv = lu.inverse();
  return {inv, -inv * shift};
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  return {linear * inner.linear, linear * inner.shift + shift};
}

// ---------------------------------------------------------------------------
// Construction.

std::string ConvexBody::kind() const {
  struct Visitor {
    std::string operator()(const Ball&) const { return "ball"; }
    std::string operator()(const Ellipsoid&) const { return "ellipsoid"; }
    std::string operator()(const HPolytope&) const { return "hpolytope"; }
    std::string operator()(const VPolytope&) const { return "vpolytope"; }
    std::string operator()(const SupportBody2D&) const { return "support2d"; }
    std::string operator()(const BallIntersection&) const { return "ball_intersection"; }
    std::string operator()(const BallHull&) const { return "ball_hull"; }
  };
  return std::visit(Visitor{}, rep_);
}

ConvexBody make_ball(const Eigen::VectorXd& center, double radius) {
  if (!(radius > 0.0)) throw DegenerateBody("ball radius must be positive");
  return ConvexBody(Ball{center, radius}, static_cast<int>(center.size()));
}

ConvexBody make_ball(int n, double radius) {
  return make_ball(Eigen::VectorXd::Zero(n), radius);
}

ConvexBody make_ellipsoid(const Eigen::VectorXd& center, const Eigen::MatrixXd& shape) {
  const int n = static_cast<int>(center.size());
  if (shape.rows() != n || shape.cols() != n) throw InvalidInput("shape matrix size mismatch");
  Eigen::MatrixXd sym = 0.5 * (shape + shape.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw DegenerateBody("ellipsoid shape matrix must be positive definite");
  return ConvexBody(Ellipsoid{center, sym}, n);
}

namespace {

HPolytope build_hpolytope(Eigen::MatrixXd A, Eigen::VectorXd b) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  if (m < n + 1) throw DegenerateBody("too few half-spaces to bound a body");
  for (int i = 0; i < m; ++i) {
    double norm = A.row(i).norm();
    if (norm < 1e-14) throw InvalidInput("zero normal row");
    A.row(i) /= norm;
    b[i] /= norm;
  }
  HPolytope hp;
  hp.normals = A;
  hp.offsets = b;
  // Box detection: all normals are +-e_i with both signs present.
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
  Eigen::VectorXd hi = lo;
  bool box = true;
  for (int i = 0; i < m && box; ++i) {
    int axis = -1;
    double sign = 0.0;
    for (int j = 0; j < n; ++j) {
      if (std::abs(std::abs(A(i, j)) - 1.0) < 1e-12) {
        axis = j;
        sign = A(i, j) > 0 ? 1.0 : -1.0;
      } else if (std::abs(A(i, j)) > 1e-12) {
        box = false;
        break;
      }
    }
    if (!box || axis < 0) {
      box = false;
      break;
    }
    if (sign > 0)
      hi[axis] = std::isnan(hi[axis]) ? b[i] : std::min(hi[axis], b[i]);
    else
      lo[axis] = std::isnan(lo[axis]) ? -b[i] : std::max(lo[axis], -b[i]);
  }
  if (box)
    for (int j = 0; j < n; ++j)
      if (std::isnan(lo[j]) || std::isnan(hi[j]) || !(hi[j] > lo[j])) box = false;
  hp.is_box = box;
  if (box) {
    hp.box_lo = lo;
    hp.box_hi = hi;
  }
  if (n <= 3) {
    hp.vertices = enumerate_vertices(A, b);
    if (hp.vertices.rows() < n + 1) throw DegenerateBody("half-spaces bound no full body");
    if (n == 2) sort_ccw(hp.vertices);
  } else if (box) {
    hp.vertices.resize(0, n);
  } else {
    // Boundedness check over probe directions.
    Rng probe(0x9e3779b9ULL);
    for (int t = 0; t < 4 * n + 32; ++t) {
      Eigen::VectorXd u = t < 2 * n ? Eigen::VectorXd::Unit(n, t / 2) * (t % 2 ? -1.0 : 1.0)
                                    : probe.sphere_direction(n);
      if ((A * u).maxCoeff() <= 1e-12) throw DegenerateBody("half-space set is unbounded");
    }
    hp.vertices.resize(0, n);
  }
  return hp;
}

VPolytope build_vpolytope(Eigen::MatrixXd v) {
  const int n = static_cast<int>(v.cols());
  VPolytope vp;
  if (n == 2) {
    Eigen::MatrixXd hull = convex_hull_2d(v);
    if (hull.rows() < 3 || poly_area(hull) <= 0.0)
      throw DegenerateBody("points do not span a planar body");
    vp.vertices = hull;
    const int k = static_cast<int>(hull.rows());
    vp.normals.resize(k, 2);
    vp.offsets.resize(k);
    for (int i = 0; i < k; ++i) {
      Eigen::Vector2d a = hull.row(i), b = hull.row((i + 1) % k);
      Eigen::Vector2d d = (b - a).normalized();
      Eigen::Vector2d nrm(d.y(), -d.x());
      vp.normals.row(i) = nrm;
      vp.offsets[i] = nrm.dot(a);
    }
    return vp;
  }
  Eigen::MatrixXd centered = v.rowwise() - v.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
  double scale = svd.singularValues()[0];
  if (svd.singularValues().size() < n || svd.singularValues()[n - 1] < 1e-10 * scale)
    throw DegenerateBody("points do not span the ambient dimension");
  vp.vertices = v;
  if (n == 3) {
    auto facets = facets_from_vertices_3d(v);
    vp.normals.resize(static_cast<int>(facets.size()), 3);
    vp.offsets.resize(static_cast<int>(facets.size()));
    for (std::size_t i = 0; i < facets.size(); ++i) {
      vp.normals.row(static_cast<int>(i)) = facets[i].normal;
      vp.offsets[static_cast<int>(i)] = facets[i].offset;
    }
  }
  return vp;
}

ConvexBody::Rep translated_rep(const ConvexBody::Rep& rep, const Eigen::VectorXd& t);

ConvexBody finish_body(ConvexBody::Rep rep, int n, Center center) {
  ConvexBody body(std::move(rep), n);
  if (center == Center::kKeep) return body;
  Eigen::VectorXd g = centroid(body);
  if (g.norm() < 1e-14) return body;
  return ConvexBody(translated_rep(body.rep(), -g), n);
}

}  // namespace

ConvexBody make_hpolytope(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets,
                          Center center) {
  if (normals.rows() != offsets.size()) throw InvalidInput("normals/offsets size mismatch");
  HPolytope hp = build_hpolytope(normals, offsets);
  const int n = static_cast<int>(normals.cols());
  if (n > 3 && !hp.is_box && (hp.offsets.array() <= 0.0).any())
    throw OriginNotInterior(
        "high-dimensional half-space input must contain the origin in its interior");
  return finish_body(std::move(hp), n, center);
}

ConvexBody make_vpolytope(const Eigen::MatrixXd& vertices, Center center) {
  const int n = static_cast<int>(vertices.cols());
  if (n >= 4) {
    VPolytope vp = build_vpolytope(vertices);
    ConvexBody body(std::move(vp), n);
    if (center == Center::kCentroid)
      throw Unsupported("centroid of a vertex set is not available for n >= 4; pass Center::kKeep");
    return body;
  }
  return finish_body(build_vpolytope(vertices), n, center);
}

ConvexBody make_support_body(SupportBody2D body, Center center) {
  if (center == Center::kKeep) return ConvexBody(std::move(body), 2);
  Eigen::Vector2d g = body.centroid_integral() / body.area();
  if (g.norm() > 1e-15) body = body.translated(-g);
  return ConvexBody(std::move(body), 2);
}

ConvexBody make_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, Center center) {
  const int n = static_cast<int>(lo.size());
  if (hi.size() != n) throw InvalidInput("box corner size mismatch");
  if (((hi - lo).array() <= 0.0).any()) throw DegenerateBody("box has empty interior");
  Eigen::MatrixXd A(2 * n, n);
  Eigen::VectorXd b(2 * n);
  A.setZero();
  for (int j = 0; j < n; ++j) {
    A(2 * j, j) = 1.0;
    b[2 * j] = hi[j];
    A(2 * j + 1, j) = -1.0;
    b[2 * j + 1] = -lo[j];
  }
  HPolytope hp = build_hpolytope(A, b);
  return finish_body(std::move(hp), n, center);
}

ConvexBody make_cube(int n, double half_width) {
  return make_box(Eigen::VectorXd::Constant(n, -half_width),
                  Eigen::VectorXd::Constant(n, half_width), Center::kKeep);
}

ConvexBody make_cross_polytope(int n) {
  if (n < 2 || n > 16) throw InvalidInput("cross-polytope dimension out of range");
  const int m = 1 << n;
  Eigen::MatrixXd A(m, n);
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  for (int mask = 0; mask < m; ++mask)
    for (int j = 0; j < n; ++j) A(mask, j) = (mask >> j & 1) ? inv : -inv;
  return make_hpolytope(A, Eigen::VectorXd::Constant(m, inv), Center::kKeep);
}

ConvexBody make_regular_polygon(int k, double circumradius) {
  if (k < 3) throw InvalidInput("polygon needs at least three vertices");
  Eigen::MatrixXd v(k, 2);
  for (int i = 0; i < k; ++i) {
    double t = 2.0 * kPi * i / k;
    v(i, 0) = circumradius * std::cos(t);
    v(i, 1) = circumradius * std::sin(t);
  }
  return make_vpolytope(v, Center::kKeep);
}

// ---------------------------------------------------------------------------
// Support / radial / membership.

double support(const ConvexBody& body, const Eigen::VectorXd& u) {
  if (const auto* b = body.get_if<Ball>()) return b->center.dot(u) + b->radius * u.norm();
  if (const auto* e = body.get_if<Ellipsoid>()) {
    Eigen::VectorXd w = e->shape.llt().solve(u);
    return e->center.dot(u) + std::sqrt(u.dot(w));
  }
  if (const auto* hp = body.get_if<HPolytope>()) {
    if (hp->is_box) {
      double s = 0.0;
      for (int j = 0; j < body.dim(); ++j)
        s += std::max(u[j] * hp->box_lo[j], u[j] * hp->box_hi[j]);
      return s;
    }
    if (hp->vertices.rows() > 0) return (hp->vertices * u).maxCoeff();
    throw Unsupported("support of a general half-space body needs dimension <= 3");
  }
  if (const auto* vp = body.get_if<VPolytope>()) return (vp->vertices * u).maxCoeff();
  if (const auto* s = body.get_if<SupportBody2D>()) {
    double norm = u.norm();
    return norm * s->h_at(std::atan2(u[1], u[0]));
  }
  if (const auto* bh = body.get_if<BallHull>())
    return std::max(support(*bh->base, u), bh->radius * u.norm());
  if (body.get_if<BallIntersection>()) {
    // Supremum of <x,u> over the boundary pieces.
    Boundary2D bd = body_boundary(body);
    Eigen::Vector2d uu(u[0], u[1]);
    double best = -std::numeric_limits<double>::infinity();
    double phi_u = std::atan2(u[1], u[0]);
    for (const auto& piece : bd.pieces) {
      if (const auto* e = std::get_if<EdgePiece>(&piece))
        best = std::max({best, uu.dot(e->a), uu.dot(e->b)});
      if (const auto* a = std::get_if<ArcPiece>(&piece)) {
        best = std::max({best, uu.dot(a->center + a->radius * unit2(a->phi0)),
                         uu.dot(a->center + a->radius * unit2(a->phi1))});
        double local = a->phi0 + wrap_angle(phi_u - a->phi0);
        if (local <= a->phi1)
          best = std::max(best, uu.dot(a->center) + a->radius * uu.norm());
      }
      if (const auto* s = std::get_if<SmoothPiece>(&piece)) {
        best = std::max({best, uu.dot(s->body->boundary_point(s->theta0)),
                         uu.dot(s->body->boundary_point(s->theta1))});
        double local = s->theta0 + wrap_angle(phi_u - s->theta0);
        if (local <= s->theta1) best = std::max(best, uu.norm() * s->body->h_at(phi_u));
      }
    }
    return best;
  }
  throw Unsupported("support not available for this representation");
}

namespace {

// Argmax over theta of cos(theta - phi) / h(theta); returns the maximum.
// This is the support of the polar body in direction phi.
double polar_support_2d(const SupportBody2D& s, double phi, double* arg = nullptr) {
  const int m = s.grid_size();
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j) {
    double t = 2.0 * kPi * j / m;
    double val = std::cos(t - phi) / s.h()[j];
    if (val > best_val) {
      best_val = val;
      best = j;
    }
  }
  double theta = 2.0 * kPi * best / m;
  for (int it = 0; it < 8; ++it) {
    double h = s.h_at(theta), hp = s.dh_at(theta), hpp = s.ddh_at(theta);
    double d = theta - phi;
    double psi = -std::sin(d) * h - std::cos(d) * hp;
    double dpsi = -std::cos(d) * (h + hpp);
    if (std::abs(dpsi) < 1e-300) break;
    double step = psi / dpsi;
    theta -= step;
    if (std::abs(step) < 1e-15) break;
  }
  if (arg) *arg = theta;
  return std::cos(theta - phi) / s.h_at(theta);
}

}  // namespace

double radial(const ConvexBody& body, const Eigen::VectorXd& u) {
  const double norm = u.norm();
  if (norm < 1e-300) throw InvalidInput("radial direction must be nonzero");
  Eigen::VectorXd d = u / norm;
  double rho;
  if (const auto* b = body.get_if<Ball>()) {
    if (b->center.norm() >= b->radius) throw OriginNotInterior();
    double cd = b->center.dot(d);
    double disc = cd * cd - b->center.squaredNorm() + b->radius * b->radius;
    rho = cd + std::sqrt(disc);
  } else if (const auto* e = body.get_if<Ellipsoid>()) {
    double alpha = d.dot(e->shape * d);
    double beta = d.dot(e->shape * e->center);
    double gamma = e->center.dot(e->shape * e->center) - 1.0;
    if (gamma >= 0.0) throw OriginNotInterior();
    rho = (beta + std::sqrt(beta * beta - alpha * gamma)) / alpha;
  } else if (const auto* hp = body.get_if<HPolytope>()) {
    if ((hp->offsets.array() <= 0.0).any()) throw OriginNotInterior();
    rho = std::numeric_limits<double>::infinity();
    Eigen::VectorXd denom = hp->normals * d;
    for (int i = 0; i < denom.size(); ++i)
      if (denom[i] > 1e-14) rho = std::min(rho, hp->offsets[i] / denom[i]);
    if (!std::isfinite(rho)) throw DegenerateBody("unbounded radial direction");
  } else if (const auto* vp = body.get_if<VPolytope>()) {
    if (vp->normals.rows() == 0)
      throw Unsupported("radial needs facet form (dimension <= 3)");
    if ((vp->offsets.array() <= 0.0).any()) throw OriginNotInterior();
    rho = std::numeric_limits<double>::infinity();
    Eigen::VectorXd denom = vp->normals * d;
    for (int i = 0; i < denom.size(); ++i)
      if (denom[i] > 1e-14) rho = std::min(rho, vp->offsets[i] / denom[i]);
    if (!std::isfinite(rho)) throw DegenerateBody("unbounded radial direction");
  } else if (const auto* s = body.get_if<SupportBody2D>()) {
    rho = 1.0 / polar_support_2d(*s, std::atan2(d[1], d[0]));
  } else if (const auto* bi = body.get_if<BallIntersection>()) {
    rho = std::min(radial(*bi->base, d), bi->radius);
  } else if (const auto* bh = body.get_if<BallHull>()) {
    // Ray-trace the boundary pieces.
    Boundary2D bd = body_boundary(body);
    Eigen::Vector2d dd(d[0], d[1]);
    rho = 0.0;
    for (const auto& piece : bd.pieces) {
      if (const auto* e = std::get_if<EdgePiece>(&piece)) {
        // Solve t*dd = a + s*(b - a).
        Eigen::Vector2d ab = e->b - e->a;
        Eigen::Matrix2d M;
        M << dd.x(), -ab.x(), dd.y(), -ab.y();
        if (std::abs(M.determinant()) < 1e-14) continue;
        Eigen::Vector2d sol = M.inverse() * e->a;
        if (sol[0] > 0.0 && sol[1] >= -1e-12 && sol[1] <= 1.0 + 1e-12)
          rho = std::max(rho, sol[0]);
      }
      if (const auto* a = std::get_if<ArcPiece>(&piece)) {
        double cd = a->center.dot(dd);
        double disc = cd * cd - a->center.squaredNorm() + a->radius * a->radius;
        if (disc < 0.0) continue;
        for (double t : {cd + std::sqrt(disc), cd - std::sqrt(disc)}) {
          if (t <= 0.0) continue;
          double phi = std::atan2(t * dd.y() - a->center.y(), t * dd.x() - a->center.x());
          double local = a->phi0 + wrap_angle(phi - a->phi0);
          if (local <= a->phi1 + 1e-12) rho = std::max(rho, t);
        }
      }
      if (const auto* s = std::get_if<SmoothPiece>(&piece)) {
        double theta;
        double val = polar_support_2d(*s->body, std::atan2(dd.y(), dd.x()), &theta);
        double local = s->theta0 + wrap_angle(theta - s->theta0);
        if (local <= s->theta1 + 1e-12) rho = std::max(rho, 1.0 / val);
      }
    }
    if (!(rho > 0.0)) throw OriginNotInterior();
  } else {
    throw Unsupported("radial not available for this representation");
  }
  return rho / norm;
}

bool contains(const ConvexBody& body, const Eigen::VectorXd& x, double tol) {
  if (const auto* b = body.get_if<Ball>()) return (x - b->center).norm() <= b->radius + tol;
  if (const auto* e = body.get_if<Ellipsoid>()) {
    Eigen::VectorXd d = x - e->center;
    return d.dot(e->shape * d) <= 1.0 + tol;
  }
  if (const auto* hp = body.get_if<HPolytope>())
    return ((hp->normals * x - hp->offsets).array() <= tol).all();
  if (const auto* vp = body.get_if<VPolytope>()) {
    if (vp->normals.rows() == 0) throw Unsupported("membership needs facet form (dimension <= 3)");
    return ((vp->normals * x - vp->offsets).array() <= tol).all();
  }
  if (const auto* s = body.get_if<SupportBody2D>()) {
    // Maximize <x,u(theta)> - h(theta); x is inside iff the max is <= 0.
    const int m = s->grid_size();
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      double t = 2.0 * kPi * j / m;
      double val = x[0] * std::cos(t) + x[1] * std::sin(t) - s->h()[j];
      if (val > best_val) {
        best_val = val;
        best = j;
      }
    }
    double theta = 2.0 * kPi * best / m;
    for (int it = 0; it < 8; ++it) {
      double c = std::cos(theta), sn = std::sin(theta);
      double q1 = -x[0] * sn + x[1] * c - s->dh_at(theta);
      double q2 = -x[0] * c - x[1] * sn - s->ddh_at(theta);
      if (std::abs(q2) < 1e-300) break;
      theta -= q1 / q2;
    }
    double val = x[0] * std::cos(theta) + x[1] * std::sin(theta) - s->h_at(theta);
    return std::max(best_val, val) <= tol;
  }
  if (const auto* bi = body.get_if<BallIntersection>())
    return x.norm() <= bi->radius + tol && contains(*bi->base, x, tol);
  if (const auto* bh = body.get_if<BallHull>()) {
    double norm = x.norm();
    if (norm <= bh->radius + tol) return true;
    return norm <= radial(body, x / norm) + tol;
  }
  throw Unsupported("membership not available for this representation");
}

std::pair<double, double> chord(const ConvexBody& body, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& dir) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  auto clip_halfspaces = [&](const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    Eigen::VectorXd num = b - A * x;
    Eigen::VectorXd den = A * dir;
    for (int i = 0; i < num.size(); ++i) {
      if (den[i] > 1e-14)
        hi = std::min(hi, num[i] / den[i]);
      else if (den[i] < -1e-14)
        lo = std::max(lo, num[i] / den[i]);
      else if (num[i] < 0.0)
        throw DomainError("chord base point lies outside the body");
    }
  };
  auto clip_quadratic = [&](const Eigen::VectorXd& c, const Eigen::MatrixXd& Ashape) {
    Eigen::VectorXd z = x - c;
    double a = dir.dot(Ashape * dir);
    double b = 2.0 * dir.dot(Ashape * z);
    double cc = z.dot(Ashape * z) - 1.0;
    double disc = b * b - 4.0 * a * cc;
    if (disc < 0.0) throw DomainError("chord base point lies outside the body");
    double sq = std::sqrt(disc);
    lo = std::max(lo, (-b - sq) / (2.0 * a));
    hi = std::min(hi, (-b + sq) / (2.0 * a));
  };
  if (const auto* b = body.get_if<Ball>()) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(body.dim(), body.dim()) /
                        (b->radius * b->radius);
    clip_quadratic(b->center, A);
  } else if (const auto* e = body.get_if<Ellipsoid>()) {
    clip_quadratic(e->center, e->shape);
  } else if (const auto* hp = body.get_if<HPolytope>()) {
    clip_halfspaces(hp->normals, hp->offsets);
  } else if (const auto* vp = body.get_if<VPolytope>()) {
    if (vp->normals.rows() == 0) throw Unsupported("chord needs facet form (dimension <= 3)");
    clip_halfspaces(vp->normals, vp->offsets);
  } else if (const auto* s = body.get_if<SupportBody2D>()) {
    // Tangent half-planes at every grid node circumscribe the body; with a
    // fine grid the resulting interval is exact to grid resolution.
    const int m = s->grid_size();
    for (int j = 0; j < m; ++j) {
      double t = 2.0 * kPi * j / m;
      Eigen::Vector2d u = unit2(t);
      double num = s->h()[j] - u.dot(Eigen::Vector2d(x[0], x[1]));
      double den = u.dot(Eigen::Vector2d(dir[0], dir[1]));
      if (den > 1e-14)
        hi = std::min(hi, num / den);
      else if (den < -1e-14)
        lo = std::max(lo, num / den);
    }
  } else if (const auto* bi = body.get_if<BallIntersection>()) {
    auto inner = chord(*bi->base, x, dir);
    Eigen::MatrixXd A =
        Eigen::MatrixXd::Identity(body.dim(), body.dim()) / (bi->radius * bi->radius);
    clip_quadratic(Eigen::VectorXd::Zero(body.dim()), A);
    lo = std::max(lo, inner.first);
    hi = std::min(hi, inner.second);
  } else {
    throw Unsupported("chord not available for this representation");
  }
  if (!(hi >= lo)) throw DomainError("empty chord");
  return {lo, hi};
}

double inradius_origin(const ConvexBody& body) {
  if (const auto* b = body.get_if<Ball>()) {
    double r = b->radius - b->center.norm();
    if (r <= 0.0) throw OriginNotInterior();
    return r;
  }
  if (const auto* e = body.get_if<Ellipsoid>()) {
    if (e->center.norm() < 1e-14) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e->shape);
      return 1.0 / std::sqrt(es.eigenvalues().maxCoeff());
    }
    // min_u h(u) over a fine grid would be approximate; use the exact
    // distance from the origin to the boundary: min over boundary of |x|,
    // obtained from the radial function on a grid plus refinement.
    double best = std::numeric_limits<double>::infinity();
    const int grid = 4096;
    if (body.dim() != 2) {
      Rng rng(0x12345);
      for (int t = 0; t < 8192; ++t)
        best = std::min(best, radial(body, rng.sphere_direction(body.dim())));
      return best;
    }
    for (int j = 0; j < grid; ++j)
      best = std::min(best, radial(body, Eigen::Vector2d(unit2(2.0 * kPi * j / grid))));
    return best;
  }
  if (const auto* hp = body.get_if<HPolytope>()) {
    double r = hp->offsets.minCoeff();
    if (r <= 0.0) throw OriginNotInterior();
    return r;
  }
  if (const auto* vp = body.get_if<VPolytope>()) {
    if (vp->normals.rows() == 0) throw Unsupported("inradius needs facet form (dimension <= 3)");
    double r = vp->offsets.minCoeff();
    if (r <= 0.0) throw OriginNotInterior();
    return r;
  }
  if (const auto* s = body.get_if<SupportBody2D>()) return s->min_h();
  if (const auto* bi = body.get_if<BallIntersection>())
    return std::min(inradius_origin(*bi->base), bi->radius);
  if (const auto* bh = body.get_if<BallHull>())
    return std::max(inradius_origin(*bh->base), bh->radius);
  throw Unsupported("inradius not available for this representation");
}

double circumradius_origin(const ConvexBody& body) {
  if (const auto* b = body.get_if<Ball>()) return b->center.norm() + b->radius;
  if (const auto* e = body.get_if<Ellipsoid>()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e->shape);
    return e->center.norm() + 1.0 / std::sqrt(es.eigenvalues().minCoeff());
  }
  if (const auto* hp = body.get_if<HPolytope>()) {
    if (hp->vertices.rows() > 0) return hp->vertices.rowwise().norm().maxCoeff();
    if (hp->is_box)
      return std::sqrt(hp->box_lo.array().square().max(hp->box_hi.array().square()).sum());
    throw Unsupported("circumradius of a general half-space body needs dimension <= 3");
  }
  if (const auto* vp = body.get_if<VPolytope>()) return vp->vertices.rowwise().norm().maxCoeff();
  if (const auto* s = body.get_if<SupportBody2D>()) {
    double best = 0.0;
    for (int j = 0; j < s->grid_size(); ++j)
      best = std::max(best, s->boundary_point_node(j).norm());
    return best;
  }
  if (const auto* bi = body.get_if<BallIntersection>())
    return std::min(circumradius_origin(*bi->base), bi->radius);
  if (const auto* bh = body.get_if<BallHull>())
    return std::max(circumradius_origin(*bh->base), bh->radius);
  throw Unsupported("circumradius not available for this representation");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> bounding_box(const ConvexBody& body) {
  const int n = body.dim();
  Eigen::VectorXd lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    hi[j] = support(body, Eigen::VectorXd::Unit(n, j));
    lo[j] = -support(body, -Eigen::VectorXd::Unit(n, j));
  }
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Polar bodies.

SupportBody2D ellipsoid_support_body(const Ellipsoid& e, int m) {
  Eigen::Matrix2d M = Eigen::Matrix2d(e.shape).inverse();
  const double m11 = M(0, 0), m12 = M(0, 1), m22 = M(1, 1);
  const double cx = e.center[0], cy = e.center[1];
  auto f = [=](double t) {
    double c = std::cos(t), s = std::sin(t);
    return m11 * c * c + 2.0 * m12 * s * c + m22 * s * s;
  };
  auto fp = [=](double t) { return (m22 - m11) * std::sin(2 * t) + 2.0 * m12 * std::cos(2 * t); };
  auto fpp = [=](double t) {
    return 2 * (m22 - m11) * std::cos(2 * t) - 4.0 * m12 * std::sin(2 * t);
  };
  return SupportBody2D::from_function(
      [=](double t) { return cx * std::cos(t) + cy * std::sin(t) + std::sqrt(f(t)); },
      [=](double t) {
        return -cx * std::sin(t) + cy * std::cos(t) + 0.5 * fp(t) / std::sqrt(f(t));
      },
      [=](double t) {
        double v = f(t);
        return -cx * std::cos(t) - cy * std::sin(t) + 0.5 * fpp(t) / std::sqrt(v) -
               0.25 * fp(t) * fp(t) / std::pow(v, 1.5);
      },
      m);
}

ConvexBody polar(const ConvexBody& body) {
  const int n = body.dim();
  if (const auto* b = body.get_if<Ball>()) {
    if (b->center.norm() < 1e-14) return make_ball(n, 1.0 / b->radius);
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) / (b->radius * b->radius);
    return polar(make_ellipsoid(b->center, A));
  }
  if (const auto* e = body.get_if<Ellipsoid>()) {
    if (e->center.dot(e->shape * e->center) >= 1.0) throw OriginNotInterior();
    Eigen::MatrixXd Ainv = e->shape.inverse();
    if (e->center.norm() < 1e-14) return make_ellipsoid(e->center, Ainv);
    // { y : <c,y> + sqrt(y' A^{-1} y) <= 1 } is again an ellipsoid:
    // y' (A^{-1} - c c') y + 2 <c,y> - 1 <= 0.
    Eigen::MatrixXd Q = Ainv - e->center * e->center.transpose();
    Eigen::VectorXd mctr = -Q.llt().solve(e->center);
    double s = 1.0 + mctr.dot(Q * mctr);
    return make_ellipsoid(mctr, Q / s);
  }
  if (const auto* hp = body.get_if<HPolytope>()) {
    if ((hp->offsets.array() <= 0.0).any()) throw OriginNotInterior();
    Eigen::MatrixXd pts = hp->normals.array().colwise() / hp->offsets.array();
    return make_vpolytope(pts, Center::kKeep);
  }
  if (const auto* vp = body.get_if<VPolytope>()) {
    Eigen::VectorXd norms = vp->vertices.rowwise().norm();
    if ((norms.array() < 1e-14).any())
      throw OriginNotInterior("polar of a vertex at the origin is unbounded");
    Eigen::MatrixXd A = vp->vertices.array().colwise() / norms.array();
    Eigen::VectorXd b = norms.cwiseInverse();
    return make_hpolytope(A, b, Center::kKeep);
  }
  if (const auto* s = body.get_if<SupportBody2D>()) {
    const int m = s->grid_size();
    Eigen::VectorXd h(m);
    for (int j = 0; j < m; ++j) h[j] = polar_support_2d(*s, 2.0 * kPi * j / m);
    return ConvexBody(SupportBody2D::from_samples(h), 2);
  }
  throw Unsupported("polar not available for this representation");
}

// ---------------------------------------------------------------------------
// Moments.

namespace {

Moments direction_mc_moments(const ConvexBody& body, long samples, std::uint64_t seed) {
  const int n = body.dim();
  const double wn = unit_ball_volume(n);
  Rng rng(seed, 17);
  double s_n = 0.0, s_n_sq = 0.0;
  Eigen::VectorXd s_c = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd s_m = Eigen::MatrixXd::Zero(n, n);
  for (long i = 0; i < samples; ++i) {
    Eigen::VectorXd u = rng.sphere_direction(n);
    double rho = radial(body, u);
    double rn = std::pow(rho, n);
    s_n += rn;
    s_n_sq += rn * rn;
    s_c += std::pow(rho, n + 1) * u * (static_cast<double>(n) / (n + 1));
    s_m += std::pow(rho, n + 2) * (u * u.transpose()) * (static_cast<double>(n) / (n + 2));
  }
  const double inv = 1.0 / static_cast<double>(samples);
  Moments mom;
  mom.volume = wn * s_n * inv;
  double var = std::max(0.0, s_n_sq * inv - (s_n * inv) * (s_n * inv));
  mom.volume_std_error = wn * std::sqrt(var * inv);
  mom.centroid = (wn * s_c * inv) / mom.volume;
  mom.second_moment = wn * s_m * inv;
  mom.method = "direction_mc";
  return mom;
}

}  // namespace

Moments moments(const ConvexBody& body, long samples, std::uint64_t seed) {
  const int n = body.dim();
  Moments mom;
  mom.method = "exact";
  if (const auto* b = body.get_if<Ball>()) {
    double V = unit_ball_volume(n) * std::pow(b->radius, n);
    mom.volume = V;
    mom.centroid = b->center;
    mom.second_moment =
        V * (b->center * b->center.transpose() +
             b->radius * b->radius / (n + 2) * Eigen::MatrixXd::Identity(n, n));
    return mom;
  }
  if (const auto* e = body.get_if<Ellipsoid>()) {
    Eigen::MatrixXd Ainv = e->shape.inverse();
    double V = unit_ball_volume(n) / std::sqrt(e->shape.determinant());
    mom.volume = V;
    mom.centroid = e->center;
    mom.second_moment = V * (e->center * e->center.transpose() + Ainv / (n + 2));
    return mom;
  }
  if (const auto* hp = body.get_if<HPolytope>()) {
    if (hp->is_box) {
      Eigen::VectorXd w = hp->box_hi - hp->box_lo;
      Eigen::VectorXd mid = 0.5 * (hp->box_hi + hp->box_lo);
      double V = w.prod();
      mom.volume = V;
      mom.centroid = mid;
      mom.second_moment =
          V * (mid * mid.transpose() +
               Eigen::MatrixXd(w.array().square().matrix().asDiagonal()) / 12.0);
      return mom;
    }
    if (n == 2) {
      double A = poly_area(hp->vertices);
      mom.volume = A;
      mom.centroid = poly_first_moment(hp->vertices) / A;
      mom.second_moment = poly_second_moment(hp->vertices);
      return mom;
    }
    if (n == 3) {
      auto facets = facets_from_vertices_3d(hp->vertices);
      return polytope_moments_3d(hp->vertices, facets);
    }
    return direction_mc_moments(body, samples, seed);
  }
  if (const auto* vp = body.get_if<VPolytope>()) {
    if (n == 2) {
      double A = poly_area(vp->vertices);
      mom.volume = A;
      mom.centroid = poly_first_moment(vp->vertices) / A;
      mom.second_moment = poly_second_moment(vp->vertices);
      return mom;
    }
    if (n == 3) {
      auto facets = facets_from_vertices_3d(vp->vertices);
      return polytope_moments_3d(vp->vertices, facets);
    }
    throw Unsupported("moments of a vertex set need dimension <= 3");
  }
  if (const auto* s = body.get_if<SupportBody2D>()) {
    double A = s->area();
    mom.volume = A;
    mom.centroid = s->centroid_integral() / A;
    mom.second_moment = s->second_moment();
    return mom;
  }
  if (const auto* bi = body.get_if<BallIntersection>()) {
    if (const auto* b = bi->base->get_if<Ball>())
      return lens_moments(n, b->center, b->radius, bi->radius);
    if (n == 2) {
      Boundary2D bd = body_boundary(body);
      double A = bd.area();
      mom.volume = A;
      mom.centroid = bd.centroid();
      mom.second_moment = bd.second_moment();
      return mom;
    }
    return direction_mc_moments(body, samples, seed);
  }
  if (body.get_if<BallHull>()) {
    if (n == 2) {
      Boundary2D bd = body_boundary(body);
      double A = bd.area();
      mom.volume = A;
      mom.centroid = bd.centroid();
      mom.second_moment = bd.second_moment();
      return mom;
    }
    throw Unsupported("hull moments need dimension 2");
  }
  throw Unsupported("moments not available for this representation");
}

double volume(const ConvexBody& body) { return moments(body).volume; }

Eigen::VectorXd centroid(const ConvexBody& body) { return moments(body).centroid; }

// ---------------------------------------------------------------------------
// Affine images and translations.

namespace {

ConvexBody::Rep translated_rep(const ConvexBody::Rep& rep, const Eigen::VectorXd& t) {
  if (const auto* b = std::get_if<Ball>(&rep)) return Ball{b->center + t, b->radius};
  if (const auto* e = std::get_if<Ellipsoid>(&rep)) return Ellipsoid{e->center + t, e->shape};
  if (const auto* hp = std::get_if<HPolytope>(&rep)) {
    HPolytope out = *hp;
    out.offsets += out.normals * t;
    if (out.vertices.rows() > 0) out.vertices.rowwise() += t.transpose();
    if (out.is_box) {
      out.box_lo += t;
      out.box_hi += t;
    }
    return out;
  }
  if (const auto* vp = std::get_if<VPolytope>(&rep)) {
    VPolytope out = *vp;
    out.vertices.rowwise() += t.transpose();
    if (out.normals.rows() > 0) out.offsets += out.normals * t;
    return out;
  }
  if (const auto* s = std::get_if<SupportBody2D>(&rep)) return s->translated(t);
  throw Unsupported("translation not available for this representation");
}

}  // namespace

ConvexBody translate(const ConvexBody& body, const Eigen::VectorXd& t) {
  return ConvexBody(translated_rep(body.rep(), t), body.dim());
}

ConvexBody apply_affine(const AffineMap& map, const ConvexBody& body) {
  const int n = body.dim();
  if (map.dim() != n) throw InvalidInput("affine map dimension mismatch");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(map.linear);
  if (!lu.isInvertible()) throw SingularMap();
  if (const auto* b = body.get_if<Ball>()) {
    Eigen::MatrixXd TTt = map.linear * map.linear.transpose();
    double s2 = TTt.trace() / n;
    if ((TTt - s2 * Eigen::MatrixXd::Identity(n, n)).norm() < 1e-12 * s2)
      return make_ball(map(b->center), b->radius * std::sqrt(s2));
    Eigen::MatrixXd A = (b->radius * b->radius * TTt).inverse();
    return make_ellipsoid(map(b->center), A);
  }
  if (const auto* e = body.get_if<Ellipsoid>()) {
    Eigen::MatrixXd Tinv = lu.inverse();
    return make_ellipsoid(map(e->center), Tinv.transpose() * e->shape * Tinv);
  }
  if (const auto* hp = body.get_if<HPolytope>()) {
    Eigen::MatrixXd Tinv = lu.inverse();
    Eigen::MatrixXd A = hp->normals * Tinv;
    Eigen::VectorXd b = hp->offsets + A * map.shift;
    return make_hpolytope(A, b, Center::kKeep);
  }
  if (const auto* vp = body.get_if<VPolytope>()) {
    Eigen::MatrixXd v = vp->vertices * map.linear.transpose();
    v.rowwise() += map.shift.transpose();
    return make_vpolytope(v, Center::kKeep);
  }
  if (const auto* s = body.get_if<SupportBody2D>()) {
    const int m = s->grid_size();
    Eigen::VectorXd h(m);
    for (int j = 0; j < m; ++j) {
      Eigen::Vector2d u = unit2(2.0 * kPi * j / m);
      Eigen::Vector2d w = map.linear.transpose() * u;
      double norm = w.norm();
      h[j] = norm * s->h_at(std::atan2(w.y(), w.x())) + map.shift.dot(u);
    }
    return ConvexBody(SupportBody2D::from_samples(h), 2);
  }
  throw Unsupported("affine image not available for this representation");
}

// ---------------------------------------------------------------------------
// Ball intersections and hulls.

ConvexBody intersect_ball(const ConvexBody& body, double R) {
  if (!(R > 0.0)) throw InvalidInput("ball radius must be positive");
  const int n = body.dim();
  if (const auto* bi = body.get_if<BallIntersection>())
    return intersect_ball(*bi->base, std::min(R, bi->radius));
  if (const auto* b = body.get_if<Ball>()) {
    if (b->center.norm() < 1e-14)
      return make_ball(n, std::min(b->radius, R));
  }
  double inr = inradius_origin(body);
  if (R <= inr * (1.0 + 1e-13)) return make_ball(n, R);
  double circ = circumradius_origin(body);
  if (R >= circ * (1.0 - 1e-13)) return ConvexBody(body.rep(), n);
  auto base = std::make_shared<const ConvexBody>(body.rep(), n);
  return ConvexBody(BallIntersection{base, R}, n);
}

ConvexBody convex_hull_with_ball(const ConvexBody& body, double R) {
  if (!(R > 0.0)) throw InvalidInput("ball radius must be positive");
  const int n = body.dim();
  if (const auto* bh = body.get_if<BallHull>())
    return convex_hull_with_ball(*bh->base, std::max(R, bh->radius));
  if (const auto* b = body.get_if<Ball>()) {
    if (b->center.norm() < 1e-14) return make_ball(n, std::max(b->radius, R));
  }
  double circ = circumradius_origin(body);
  if (R >= circ * (1.0 - 1e-13)) return make_ball(n, R);
  // Minimum of the support function: below it the ball is swallowed.
  double min_h;
  if (const auto* hp = body.get_if<HPolytope>()) {
    min_h = hp->offsets.minCoeff();
  } else if (const auto* vp = body.get_if<VPolytope>()) {
    min_h = vp->normals.rows() > 0 ? vp->offsets.minCoeff()
                                   : inradius_origin(body);
  } else {
    min_h = inradius_origin(body);
  }
  if (R <= min_h * (1.0 + 1e-13)) return ConvexBody(body.rep(), n);
  auto base = std::make_shared<const ConvexBody>(body.rep(), n);
  return ConvexBody(BallHull{base, R}, n);
}

double support_distance(const ConvexBody& a, const ConvexBody& b, int directions,
                        std::uint64_t seed) {
  if (a.dim() != b.dim()) throw InvalidInput("dimension mismatch");
  double best = 0.0;
  if (a.dim() == 2) {
    for (int j = 0; j < directions; ++j) {
      Eigen::Vector2d u = unit2(2.0 * kPi * j / directions);
      best = std::max(best, std::abs(support(a, u) - support(b, u)));
    }
    return best;
  }
  Rng rng(seed, 23);
  for (int j = 0; j < directions; ++j) {
    Eigen::VectorXd u = rng.sphere_direction(a.dim());
    best = std::max(best, std::abs(support(a, u) - support(b, u)));
  }
  return best;
}

Eigen::MatrixXd convex_hull_2d(const Eigen::MatrixXd& points) {
  const int m = static_cast<int>(points.rows());
  if (m < 3) throw DegenerateBody("hull needs at least three points");
  std::vector<Eigen::Vector2d> pts(m);
  for (int i = 0; i < m; ++i) pts[i] = points.row(i);
  std::sort(pts.begin(), pts.end(), [](const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
    return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
                          return (p - q).norm() < 1e-14;
                        }),
            pts.end());
  auto build = [&](bool upper) {
    std::vector<Eigen::Vector2d> chain;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Eigen::Vector2d& p = upper ? pts[pts.size() - 1 - i] : pts[i];
      while (chain.size() >= 2 &&
             cross2(chain.back() - chain[chain.size() - 2], p - chain.back()) <= 1e-14)
        chain.pop_back();
      chain.push_back(p);
    }
    chain.pop_back();
    return chain;
  };
  auto lowerc = build(false);
  auto upperc = build(true);
  lowerc.insert(lowerc.end(), upperc.begin(), upperc.end());
  if (lowerc.size() < 3) throw DegenerateBody("points are collinear");
  Eigen::MatrixXd out(static_cast<int>(lowerc.size()), 2);
  for (std::size_t i = 0; i < lowerc.size(); ++i) out.row(static_cast<int>(i)) = lowerc[i];
  return out;
}

double polygon_area(const Eigen::MatrixXd& ccw_vertices) { return poly_area(ccw_vertices); }

Eigen::MatrixXd boundary_polygon(const ConvexBody& body, int m) {
  if (body.dim() != 2) throw Unsupported("boundary polygon needs a 2-D body");
  if (const Eigen::MatrixXd* v = polygon_rows(body)) return *v;
  Eigen::MatrixXd out(m, 2);
  if (const auto* s = body.get_if<SupportBody2D>()) {
    // Contact points at equally spaced normal angles are already ordered.
    for (int j = 0; j < m; ++j) out.row(j) = s->boundary_point(2.0 * kPi * j / m);
    return out;
  }
  for (int j = 0; j < m; ++j) {
    Eigen::Vector2d u = unit2(2.0 * kPi * j / m);
    out.row(j) = radial(body, u) * u;
  }
  return out;
}

}  // namespace affsurf
