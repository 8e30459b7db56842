#include "affsurf/boundary2d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "affsurf/errors.hpp"
#include "affsurf/util.hpp"

namespace affsurf {

namespace {

Eigen::Vector2d unit(double t) { return {std::cos(t), std::sin(t)}; }

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Panels sized so Gauss-Legendre 64 resolves the highest oscillation present.
int panel_count(double span, int max_mode) {
  double waves = std::abs(span) * std::max(1, max_mode) / (2.0 * kPi);
  return std::max(1, static_cast<int>(std::ceil(waves / 16.0)));
}

double gl_piecewise(double a, double b, int panels, const std::function<double(double)>& f) {
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    double lo = a + (b - a) * k / panels;
    double hi = a + (b - a) * (k + 1) / panels;
    total += integrate_gl64(lo, hi, f);
  }
  return total;
}

struct GreenAccum {
  double area = 0.0;
  Eigen::Vector2d first = Eigen::Vector2d::Zero();
};

// Green integrals (1/2) oint x cross dx and (1/3) oint x (x cross dx).
GreenAccum green(const BoundaryPiece& piece) {
  GreenAccum acc;
  if (const auto* e = std::get_if<EdgePiece>(&piece)) {
    double w = cross2(e->a, e->b);
    acc.area = 0.5 * w;
    acc.first = w * (e->a + e->b) / 6.0;
    return acc;
  }
  if (const auto* a = std::get_if<ArcPiece>(&piece)) {
    const Eigen::Vector2d q = a->center;
    const double rho = a->radius;
    Eigen::Vector2d J(std::sin(a->phi1) - std::sin(a->phi0),
                      std::cos(a->phi0) - std::cos(a->phi1));
    acc.area = 0.5 * (rho * q.dot(J) + rho * rho * (a->phi1 - a->phi0));
    int panels = panel_count(a->phi1 - a->phi0, 4);
    for (int axis = 0; axis < 2; ++axis) {
      acc.first[axis] = gl_piecewise(a->phi0, a->phi1, panels, [&](double t) {
                          Eigen::Vector2d x = q + rho * unit(t);
                          return x[axis] * (rho * q.dot(unit(t)) + rho * rho);
                        }) /
                        3.0;
    }
    return acc;
  }
  const auto& s = std::get<SmoothPiece>(piece);
  int panels = panel_count(s.theta1 - s.theta0, s.body->max_mode());
  auto w = [&](double t) { return s.body->h_at(t) * s.body->curvature_radius_at(t); };
  acc.area = 0.5 * gl_piecewise(s.theta0, s.theta1, panels, w);
  for (int axis = 0; axis < 2; ++axis) {
    acc.first[axis] = gl_piecewise(s.theta0, s.theta1, panels, [&](double t) {
                        return s.body->boundary_point(t)[axis] * w(t);
                      }) /
                      3.0;
  }
  return acc;
}

}  // namespace

namespace {

// (1/4) oint x x' (x cross dx), the second moment of the enclosed region.
Eigen::Matrix2d second_moment_piece(const BoundaryPiece& piece) {
  if (const auto* e = std::get_if<EdgePiece>(&piece)) {
    const Eigen::Vector2d a = e->a, d = e->b - e->a;
    double w = cross2(e->a, e->b);
    Eigen::Matrix2d mixed = a * d.transpose() + d * a.transpose();
    return (w / 4.0) * (a * a.transpose() + 0.5 * mixed + d * d.transpose() / 3.0);
  }
  Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
  auto accumulate = [&](double t0, double t1, int panels, auto&& point, auto&& weight) {
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) {
        double v = gl_piecewise(t0, t1, panels, [&](double t) {
                     Eigen::Vector2d x = point(t);
                     return x[i] * x[j] * weight(t);
                   }) /
                   4.0;
        acc(i, j) = v;
        acc(j, i) = v;
      }
  };
  if (const auto* a = std::get_if<ArcPiece>(&piece)) {
    const Eigen::Vector2d q = a->center;
    const double rho = a->radius;
    accumulate(
        a->phi0, a->phi1, panel_count(a->phi1 - a->phi0, 8),
        [&](double t) { return Eigen::Vector2d(q + rho * unit(t)); },
        [&](double t) { return rho * q.dot(unit(t)) + rho * rho; });
    return acc;
  }
  const auto& s = std::get<SmoothPiece>(piece);
  accumulate(
      s.theta0, s.theta1, panel_count(s.theta1 - s.theta0, 2 * s.body->max_mode()),
      [&](double t) { return s.body->boundary_point(t); },
      [&](double t) { return s.body->h_at(t) * s.body->curvature_radius_at(t); });
  return acc;
}

}  // namespace

double Boundary2D::area() const {
  double a = 0.0;
  for (const auto& p : pieces) a += green(p).area;
  return a;
}

Eigen::Matrix2d Boundary2D::second_moment() const {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  for (const auto& p : pieces) m += second_moment_piece(p);
  return m;
}

Eigen::Vector2d Boundary2D::centroid() const {
  double a = 0.0;
  Eigen::Vector2d m = Eigen::Vector2d::Zero();
  for (const auto& p : pieces) {
    GreenAccum g = green(p);
    a += g.area;
    m += g.first;
  }
  if (!(a > 0.0)) throw DegenerateBody("boundary encloses no area");
  return m / a;
}

double Boundary2D::asp(double p, const Eigen::Vector2d& g, bool& infinite) const {
  if (p == -2.0) throw PEqualsMinusN();
  infinite = false;
  const double ek = curvature_exponent(2, p);
  const double ew = weight_exponent(2, p);
  double total = 0.0;
  for (const auto& piece : pieces) {
    if (const auto* e = std::get_if<EdgePiece>(&piece)) {
      double len = (e->b - e->a).norm();
      if (len < 1e-13) continue;
      if (p > 0.0 || p < -2.0) continue;
      if (p == 0.0) {
        Eigen::Vector2d d = (e->b - e->a) / len;
        Eigen::Vector2d n(d.y(), -d.x());
        total += len * n.dot(e->a - g);
        continue;
      }
      infinite = true;  // -2 < p < 0: a flat boundary part makes as_p diverge
      return 0.0;
    }
    if (const auto* a = std::get_if<ArcPiece>(&piece)) {
      double rho = a->radius;
      Eigen::Vector2d qg = a->center - g;
      int panels = std::max(panel_count(a->phi1 - a->phi0, 4),
                            static_cast<int>((a->phi1 - a->phi0) / 0.8) + 1);
      total += std::pow(rho, 1.0 - ek) *
               gl_piecewise(a->phi0, a->phi1, panels,
                            [&](double t) { return std::pow(qg.dot(unit(t)) + rho, -ew); });
      continue;
    }
    const auto& s = std::get<SmoothPiece>(piece);
    int panels = panel_count(s.theta1 - s.theta0, s.body->max_mode());
    total += gl_piecewise(s.theta0, s.theta1, panels, [&](double t) {
      double r = s.body->curvature_radius_at(t);
      double w = s.body->h_at(t) - g.dot(unit(t));
      return std::pow(r, 1.0 - ek) * std::pow(w, -ew);
    });
  }
  return total;
}

bool Boundary2D::has_edges(double min_length) const {
  for (const auto& piece : pieces)
    if (const auto* e = std::get_if<EdgePiece>(&piece))
      if ((e->b - e->a).norm() > min_length) return true;
  return false;
}

double Boundary2D::edge_length() const {
  double len = 0.0;
  for (const auto& piece : pieces)
    if (const auto* e = std::get_if<EdgePiece>(&piece)) len += (e->b - e->a).norm();
  return len;
}

double Boundary2D::curve_length() const {
  double len = edge_length();
  for (const auto& piece : pieces) {
    if (const auto* a = std::get_if<ArcPiece>(&piece)) len += a->radius * (a->phi1 - a->phi0);
    if (const auto* s = std::get_if<SmoothPiece>(&piece)) {
      int panels = panel_count(s->theta1 - s->theta0, s->body->max_mode());
      len += gl_piecewise(s->theta0, s->theta1, panels,
                          [&](double t) { return s->body->curvature_radius_at(t); });
    }
  }
  return len;
}

namespace {

// ---- polygon base ----------------------------------------------------------

Boundary2D polygon_intersection(const Eigen::MatrixXd& v, double R) {
  const int k = static_cast<int>(v.rows());
  struct Clipped {
    Eigen::Vector2d a, b;
    bool exits_on_circle;
  };
  std::vector<Clipped> chain;
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d a = v.row(i), b = v.row((i + 1) % k);
    Eigen::Vector2d d = b - a;
    double A = d.squaredNorm();
    double B = a.dot(d);
    double C = a.squaredNorm() - R * R;
    double disc = B * B - A * C;
    if (disc <= 0.0) {
      if (a.norm() <= R) chain.push_back({a, b, false});  // fully inside
      continue;
    }
    double sq = std::sqrt(disc);
    double t0 = (-B - sq) / A, t1 = (-B + sq) / A;
    double lo = std::max(0.0, t0), hi = std::min(1.0, t1);
    if (hi - lo <= 1e-13) continue;  // outside or grazing
    chain.push_back({a + lo * d, a + hi * d, hi < 1.0 - 1e-13});
  }
  Boundary2D out;
  if (chain.empty()) {
    out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, 0.0, 2.0 * kPi});
    return out;
  }
  const std::size_t m = chain.size();
  for (std::size_t j = 0; j < m; ++j) {
    out.pieces.push_back(EdgePiece{chain[j].a, chain[j].b});
    if (chain[j].exits_on_circle) {
      const Eigen::Vector2d& e = chain[j].b;
      const Eigen::Vector2d& s = chain[(j + 1) % m].a;
      double p0 = std::atan2(e.y(), e.x());
      double span = wrap_angle(std::atan2(s.y(), s.x()) - p0);
      if (span > 1e-12 && span < 2.0 * kPi - 1e-12)
        out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, p0, p0 + span});
    }
  }
  return out;
}

Boundary2D polygon_hull(const Eigen::MatrixXd& v, double R) {
  const int k = static_cast<int>(v.rows());
  std::vector<double> gamma(k);  // normal angle of edge (v_i, v_{i+1})
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d d = v.row((i + 1) % k) - v.row(i);
    gamma[i] = std::atan2(-d.x(), d.y());
  }
  // For each vertex, the normal-angle window on which it supports the hull:
  // its normal cone intersected with { theta : <v, u(theta)> >= R }.
  struct Window {
    int vertex;
    double enter, exit;
    bool enter_tangent, exit_tangent;
  };
  std::vector<Window> wins;
  for (int i = 0; i < k; ++i) {
    double lo = gamma[(i + k - 1) % k];
    double cone = wrap_angle(gamma[i] - lo);
    Eigen::Vector2d vi = v.row(i);
    double norm = vi.norm();
    if (norm <= R * (1.0 + 1e-13)) continue;
    double w = std::acos(std::min(1.0, R / norm));
    double a = wrap_angle(std::atan2(vi.y(), vi.x()) - w - lo);
    if (a >= cone) a -= 2.0 * kPi;  // window may begin before the cone does
    double b = a + 2.0 * w;
    if (b <= 1e-13) continue;
    double clo = std::max(0.0, a), chi = std::min(cone, b);
    if (chi - clo <= 1e-13) continue;
    wins.push_back({i, lo + clo, lo + chi, a > 1e-13, b < cone - 1e-13});
  }
  Boundary2D out;
  if (wins.empty()) {
    out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, 0.0, 2.0 * kPi});
    return out;
  }
  const std::size_t m = wins.size();
  for (std::size_t j = 0; j < m; ++j) {
    const Window& cur = wins[j];
    const Window& nxt = wins[(j + 1) % m];
    Eigen::Vector2d vc = v.row(cur.vertex);
    if (cur.enter_tangent) out.pieces.push_back(EdgePiece{R * unit(cur.enter), vc});
    if (cur.exit_tangent) {
      out.pieces.push_back(EdgePiece{vc, R * unit(cur.exit)});
      double span = wrap_angle(nxt.enter - cur.exit);
      if (span > 1e-12)
        out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, cur.exit, cur.exit + span});
    } else {
      // The walk leaves through the cone boundary: polygon edges survive up
      // to the next windowed vertex.
      int i = cur.vertex;
      int steps = 0;
      while (i != nxt.vertex) {
        out.pieces.push_back(EdgePiece{v.row(i % k), v.row((i + 1) % k)});
        i = (i + 1) % k;
        if (++steps > k) throw Error("hull boundary assembly failed to terminate");
      }
    }
  }
  return out;
}

// ---- smooth base -----------------------------------------------------------

std::vector<double> grid_roots(const SupportBody2D& s, const std::function<double(double)>& f) {
  const int m = s.grid_size();
  std::vector<double> roots;
  for (int j = 0; j < m; ++j) {
    double t0 = 2.0 * kPi * j / m, t1 = 2.0 * kPi * (j + 1) / m;
    double f0 = f(t0), f1 = f(t1);
    if ((f0 < 0.0) == (f1 < 0.0)) continue;
    double lo = t0, hi = t1;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      if ((f(mid) < 0.0) == (f0 < 0.0))
        lo = mid;
      else
        hi = mid;
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

Boundary2D smooth_intersection(const SupportBody2D& s, double R) {
  auto f = [&](double t) {
    double h = s.h_at(t), hp = s.dh_at(t);
    return h * h + hp * hp - R * R;  // |boundary point|^2 - R^2
  };
  auto roots = grid_roots(s, f);
  Boundary2D out;
  if (roots.empty()) {
    if (f(0.0) < 0.0)
      out.pieces.push_back(SmoothPiece{&s, 0.0, 2.0 * kPi});
    else
      out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, 0.0, 2.0 * kPi});
    return out;
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double t0 = roots[i];
    double span = (i + 1 == roots.size()) ? roots[0] + 2.0 * kPi - t0 : roots[i + 1] - t0;
    if (span < 1e-12) continue;
    if (f(t0 + 0.5 * span) < 0.0) {
      out.pieces.push_back(SmoothPiece{&s, t0, t0 + span});
    } else {
      Eigen::Vector2d pa = s.boundary_point(t0);
      Eigen::Vector2d pb = s.boundary_point(t0 + span);
      double p0 = std::atan2(pa.y(), pa.x());
      double arc = wrap_angle(std::atan2(pb.y(), pb.x()) - p0);
      if (arc > 1e-12) out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, p0, p0 + arc});
    }
  }
  return out;
}

Boundary2D smooth_hull(const SupportBody2D& s, double R) {
  auto f = [&](double t) { return s.h_at(t) - R; };
  auto roots = grid_roots(s, f);
  Boundary2D out;
  if (roots.empty()) {
    if (f(0.0) > 0.0)
      out.pieces.push_back(SmoothPiece{&s, 0.0, 2.0 * kPi});
    else
      out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, 0.0, 2.0 * kPi});
    return out;
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double t0 = roots[i];
    double span = (i + 1 == roots.size()) ? roots[0] + 2.0 * kPi - t0 : roots[i + 1] - t0;
    if (span < 1e-12) continue;
    if (f(t0 + 0.5 * span) > 0.0) {
      // Body part; tangent segments join the circle and the contact points,
      // all sharing the normal direction at the crossing angle.
      out.pieces.push_back(EdgePiece{R * unit(t0), s.boundary_point(t0)});
      out.pieces.push_back(SmoothPiece{&s, t0, t0 + span});
      out.pieces.push_back(EdgePiece{s.boundary_point(t0 + span), R * unit(t0 + span)});
    } else {
      out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, t0, t0 + span});
    }
  }
  return out;
}

// ---- ball base -------------------------------------------------------------

Boundary2D ball_intersection(const Eigen::Vector2d& c, double r, double R) {
  double m = c.norm();
  Boundary2D out;
  if (m < 1e-14) {
    out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), std::min(r, R), 0.0, 2.0 * kPi});
    return out;
  }
  double psi = std::atan2(c.y(), c.x());
  double t1 = (R * R - r * r - m * m) / (2.0 * r * m);
  double t2 = (R * R + m * m - r * r) / (2.0 * R * m);
  if (t1 >= 1.0) {  // ball inside circle
    out.pieces.push_back(ArcPiece{c, r, 0.0, 2.0 * kPi});
    return out;
  }
  if (t2 >= 1.0) {  // circle inside ball
    out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, 0.0, 2.0 * kPi});
    return out;
  }
  double A1 = std::acos(std::max(-1.0, t1));
  double A2 = std::acos(std::max(-1.0, t2));
  out.pieces.push_back(ArcPiece{c, r, psi + A1, psi + 2.0 * kPi - A1});
  out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, psi - A2, psi + A2});
  return out;
}

Boundary2D ball_hull(const Eigen::Vector2d& c, double r, double R) {
  double m = c.norm();
  Boundary2D out;
  double psi = std::atan2(c.y(), c.x());
  double t = m > 0 ? (R - r) / m : 2.0;
  if (t >= 1.0) {
    out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, 0.0, 2.0 * kPi});
    return out;
  }
  if (t <= -1.0) {
    out.pieces.push_back(ArcPiece{c, r, 0.0, 2.0 * kPi});
    return out;
  }
  double w = std::acos(t);
  double enter = psi - w, exit = psi + w;
  out.pieces.push_back(EdgePiece{R * unit(enter), c + r * unit(enter)});
  out.pieces.push_back(ArcPiece{c, r, enter, exit});
  out.pieces.push_back(EdgePiece{c + r * unit(exit), R * unit(exit)});
  out.pieces.push_back(ArcPiece{Eigen::Vector2d::Zero(), R, exit, enter + 2.0 * kPi});
  return out;
}

const Eigen::MatrixXd* polygon_vertices(const ConvexBody& body) {
  if (const auto* vp = body.get_if<VPolytope>()) return &vp->vertices;
  if (const auto* hp = body.get_if<HPolytope>())
    if (hp->vertices.rows() > 0) return &hp->vertices;
  return nullptr;
}

}  // namespace

Boundary2D intersection_boundary(const ConvexBody& base, double R) {
  if (base.dim() != 2) throw Unsupported("boundary decomposition is planar only");
  if (const auto* b = base.get_if<Ball>()) return ball_intersection(b->center, b->radius, R);
  if (const auto* p = polygon_vertices(base)) return polygon_intersection(*p, R);
  if (const auto* s = base.get_if<SupportBody2D>()) return smooth_intersection(*s, R);
  if (const auto* e = base.get_if<Ellipsoid>()) {
    auto owned = std::make_shared<SupportBody2D>(ellipsoid_support_body(*e));
    Boundary2D out = smooth_intersection(*owned, R);
    out.owned = owned;
    return out;
  }
  throw Unsupported("ball intersection boundary needs a polygon, ball, ellipsoid or support body");
}

Boundary2D hull_boundary(const ConvexBody& base, double R) {
  if (base.dim() != 2) throw Unsupported("boundary decomposition is planar only");
  if (const auto* b = base.get_if<Ball>()) return ball_hull(b->center, b->radius, R);
  if (const auto* p = polygon_vertices(base)) return polygon_hull(*p, R);
  if (const auto* s = base.get_if<SupportBody2D>()) return smooth_hull(*s, R);
  if (const auto* e = base.get_if<Ellipsoid>()) {
    auto owned = std::make_shared<SupportBody2D>(ellipsoid_support_body(*e));
    Boundary2D out = smooth_hull(*owned, R);
    out.owned = owned;
    return out;
  }
  throw Unsupported("ball hull boundary needs a polygon, ball, ellipsoid or support body");
}

Boundary2D body_boundary(const ConvexBody& body) {
  if (body.dim() != 2) throw Unsupported("boundary decomposition is planar only");
  Boundary2D out;
  if (const auto* b = body.get_if<Ball>()) {
    out.pieces.push_back(ArcPiece{b->center, b->radius, 0.0, 2.0 * kPi});
    return out;
  }
  if (const auto* p = polygon_vertices(body)) {
    const int k = static_cast<int>(p->rows());
    for (int i = 0; i < k; ++i) out.pieces.push_back(EdgePiece{p->row(i), p->row((i + 1) % k)});
    return out;
  }
  if (const auto* s = body.get_if<SupportBody2D>()) {
    out.pieces.push_back(SmoothPiece{s, 0.0, 2.0 * kPi});
    return out;
  }
  if (const auto* e = body.get_if<Ellipsoid>()) {
    auto owned = std::make_shared<SupportBody2D>(ellipsoid_support_body(*e));
    out.pieces.push_back(SmoothPiece{owned.get(), 0.0, 2.0 * kPi});
    out.owned = owned;
    return out;
  }
  if (const auto* bi = body.get_if<BallIntersection>())
    return intersection_boundary(*bi->base, bi->radius);
  if (const auto* bh = body.get_if<BallHull>()) return hull_boundary(*bh->base, bh->radius);
  throw Unsupported("no boundary decomposition for this representation");
}

Boundary2D outer_parallel_boundary(const Eigen::MatrixXd& v, double eps) {
  const int k = static_cast<int>(v.rows());
  Boundary2D out;
  std::vector<double> gamma(k);
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d d = v.row((i + 1) % k) - v.row(i);
    gamma[i] = std::atan2(-d.x(), d.y());
  }
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d n = unit(gamma[i]);
    out.pieces.push_back(EdgePiece{Eigen::Vector2d(v.row(i)) + eps * n,
                                   Eigen::Vector2d(v.row((i + 1) % k)) + eps * n});
    double span = wrap_angle(gamma[(i + 1) % k] - gamma[i]);
    if (span > 1e-12)
      out.pieces.push_back(ArcPiece{v.row((i + 1) % k), eps, gamma[i], gamma[i] + span});
  }
  return out;
}

Boundary2D rounded_box_boundary(double half_x, double half_y, double eps) {
  if (!(eps > 0.0) || eps >= std::min(half_x, half_y))
    throw InvalidInput("corner radius must lie in (0, min half-width)");
  Eigen::MatrixXd core(4, 2);
  core << half_x - eps, -(half_y - eps), half_x - eps, half_y - eps, -(half_x - eps),
      half_y - eps, -(half_x - eps), -(half_y - eps);
  return outer_parallel_boundary(core, eps);
}

}  // namespace affsurf
