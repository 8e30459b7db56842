#include "affsurf/floating.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include "affsurf/errors.hpp"
#include "affsurf/util.hpp"

namespace affsurf {

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Width profile of a convex polygon along a direction u: the cross-section
// length w(y) at level y = <x, u> is piecewise linear between vertex levels,
// so cap areas above any level follow from per-segment trapezoids.
struct CapProfile {
  std::vector<double> lo, hi, wlo, whi, above;  // per segment; above = area past hi
  double total = 0.0;
  double ymin = 0.0, ymax = 0.0;

  double area_above(double t) const {
    if (t <= ymin) return total;
    if (t >= ymax) return 0.0;
    int s = static_cast<int>(std::upper_bound(lo.begin(), lo.end(), t) - lo.begin()) - 1;
    s = std::clamp(s, 0, static_cast<int>(lo.size()) - 1);
    double len = hi[s] - lo[s];
    double w = len > 0.0 ? wlo[s] + (whi[s] - wlo[s]) * (t - lo[s]) / len : wlo[s];
    return above[s] + (hi[s] - t) * (w + whi[s]) / 2.0;
  }

  // Level whose cap has the requested area, found by bisection.
  double solve(double target) const {
    double a = ymin, b = ymax;
    for (int it = 0; it < 200 && b - a > 1e-15 * (std::abs(ymax) + std::abs(ymin) + 1.0);
         ++it) {
      double mid = 0.5 * (a + b);
      if (area_above(mid) > target)
        a = mid;
      else
        b = mid;
    }
    return 0.5 * (a + b);
  }
};

// Monotone (y, z) chain with interpolation at interior levels.
struct Chain {
  std::vector<double> y, z;
  double at(double level) const {
    int s = static_cast<int>(std::upper_bound(y.begin(), y.end(), level) - y.begin()) - 1;
    s = std::clamp(s, 0, static_cast<int>(y.size()) - 2);
    double len = y[s + 1] - y[s];
    if (len <= 0.0) return z[s];
    return z[s] + (z[s + 1] - z[s]) * (level - y[s]) / len;
  }
};

CapProfile cap_profile(const Eigen::MatrixXd& poly, const Eigen::Vector2d& u) {
  const int k = static_cast<int>(poly.rows());
  const Eigen::Vector2d up(-u.y(), u.x());
  Eigen::VectorXd py(k), pz(k);
  int imax = 0, imin = 0;
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d v = poly.row(i);
    py[i] = v.dot(u);
    pz[i] = v.dot(up);
    if (py[i] > py[imax]) imax = i;
    if (py[i] < py[imin]) imin = i;
  }
  // Two boundary chains between the extreme levels; walking the polygon
  // counterclockwise each chain is monotone in y.
  auto walk = [&](int from, int to) {
    Chain c;
    for (int i = from;; i = (i + 1) % k) {
      c.y.push_back(py[i]);
      c.z.push_back(pz[i]);
      if (i == to) break;
    }
    if (c.y.front() > c.y.back()) {
      std::reverse(c.y.begin(), c.y.end());
      std::reverse(c.z.begin(), c.z.end());
    }
    return c;
  };
  Chain a = walk(imax, imin);
  Chain b = walk(imin, imax);

  std::vector<double> levels(py.data(), py.data() + k);
  std::sort(levels.begin(), levels.end());
  const double span = levels.back() - levels.front();
  std::vector<double> grid;
  for (double v : levels)
    if (grid.empty() || v - grid.back() > 1e-14 * span) grid.push_back(v);
  if (grid.size() < 2) throw DegenerateBody("polygon is flat along a cut direction");

  CapProfile prof;
  prof.ymin = grid.front();
  prof.ymax = grid.back();
  const int segs = static_cast<int>(grid.size()) - 1;
  prof.lo.resize(segs);
  prof.hi.resize(segs);
  prof.wlo.resize(segs);
  prof.whi.resize(segs);
  prof.above.assign(segs, 0.0);
  for (int s = 0; s < segs; ++s) {
    prof.lo[s] = grid[s];
    prof.hi[s] = grid[s + 1];
    double len = grid[s + 1] - grid[s];
    // Width is linear inside the segment; two interior probes recover the
    // endpoint values without touching the ambiguous extreme levels.
    double y1 = grid[s] + len / 3.0, y2 = grid[s] + 2.0 * len / 3.0;
    double w1 = std::abs(a.at(y1) - b.at(y1));
    double w2 = std::abs(a.at(y2) - b.at(y2));
    prof.wlo[s] = std::max(0.0, 2.0 * w1 - w2);
    prof.whi[s] = std::max(0.0, 2.0 * w2 - w1);
  }
  auto seg_area = [&](int s) {
    return (prof.hi[s] - prof.lo[s]) * (prof.wlo[s] + prof.whi[s]) / 2.0;
  };
  for (int s = segs - 2; s >= 0; --s) prof.above[s] = prof.above[s + 1] + seg_area(s + 1);
  prof.total = prof.above[0] + seg_area(0);
  return prof;
}

struct HalfPlane {
  Eigen::Vector2d u;  // outward normal
  double t;           // interior is <x, u> <= t
};

Eigen::Vector2d line_intersect(const HalfPlane& a, const HalfPlane& b) {
  Eigen::Matrix2d M;
  M << a.u.x(), a.u.y(), b.u.x(), b.u.y();
  return M.inverse() * Eigen::Vector2d(a.t, b.t);
}

bool violates(const Eigen::Vector2d& x, const HalfPlane& h, double scale) {
  return x.dot(h.u) - h.t > 1e-12 * scale;
}

// Intersection of half-planes whose normals are sorted by angle, via the
// classic deque sweep. Returns counterclockwise vertices.
Eigen::MatrixXd halfplane_polygon(const std::vector<HalfPlane>& planes) {
  double scale = 1.0;
  for (const auto& h : planes) scale = std::max(scale, std::abs(h.t));
  std::deque<HalfPlane> dq;
  for (const auto& h : planes) {
    while (dq.size() >= 2 && violates(line_intersect(dq[dq.size() - 2], dq.back()), h, scale))
      dq.pop_back();
    while (dq.size() >= 2 && violates(line_intersect(dq[0], dq[1]), h, scale)) dq.pop_front();
    dq.push_back(h);
  }
  while (dq.size() >= 3 && violates(line_intersect(dq[dq.size() - 2], dq.back()), dq[0], scale))
    dq.pop_back();
  while (dq.size() >= 3 && violates(line_intersect(dq[0], dq[1]), dq.back(), scale))
    dq.pop_front();
  if (dq.size() < 3) throw EmptyFloatingBody("cuts leave no interior");
  const int m = static_cast<int>(dq.size());
  Eigen::MatrixXd v(m, 2);
  for (int i = 0; i < m; ++i) v.row(i) = line_intersect(dq[i], dq[(i + 1) % m]);
  double area = 0.0;
  for (int i = 0; i < m; ++i) {
    Eigen::Vector2d p = v.row(i), q = v.row((i + 1) % m);
    area += cross2(p, q);
  }
  if (!(area > 0.0)) throw EmptyFloatingBody("cuts leave no interior");
  return v;
}

void check_deltas(const std::vector<double>& deltas) {
  for (double d : deltas)
    if (!(d > 0.0) || !(d < 0.5))
      throw DeltaOutOfRange("delta must lie strictly between 0 and 1/2");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] < deltas[i - 1]))
      throw NonMonotoneSequence("delta values must be strictly decreasing");
}

// Per-delta supporting cut levels over the direction grid.
std::vector<std::vector<HalfPlane>> cut_planes(const Eigen::MatrixXd& poly,
                                               const std::vector<double>& deltas,
                                               int directions) {
  const double area = polygon_area(poly);
  std::vector<std::vector<HalfPlane>> planes(deltas.size());
  for (auto& v : planes) v.resize(directions);
  parallel_for(directions, [&](std::size_t j) {
    double ang = 2.0 * kPi * static_cast<double>(j) / directions;
    Eigen::Vector2d u(std::cos(ang), std::sin(ang));
    CapProfile prof = cap_profile(poly, u);
    for (std::size_t d = 0; d < deltas.size(); ++d)
      planes[d][j] = HalfPlane{u, prof.solve(deltas[d] * area)};
  });
  return planes;
}

}  // namespace

std::vector<FloatingBody> floating_bodies_2d(const ConvexBody& body,
                                             const std::vector<double>& deltas,
                                             int directions) {
  if (body.dim() != 2) throw Unsupported("floating bodies are built in 2-D only");
  if (deltas.empty()) throw InvalidInput("need at least one delta");
  check_deltas(deltas);
  if (directions < 16) throw InvalidInput("direction grid is too coarse");
  Eigen::MatrixXd poly = boundary_polygon(body, 4096);
  auto planes = cut_planes(poly, deltas, directions);
  std::vector<FloatingBody> out;
  out.reserve(deltas.size());
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    Eigen::MatrixXd v = halfplane_polygon(planes[d]);
    out.push_back(FloatingBody{body, deltas[d], make_vpolytope(v, Center::kKeep)});
  }
  return out;
}

FloatingBody floating_body_2d(const ConvexBody& body, double delta, int directions) {
  return std::move(floating_bodies_2d(body, {delta}, directions).front());
}

AspValue asp1_floating_limit_2d(const ConvexBody& body, const std::vector<double>& deltas,
                                int directions) {
  if (deltas.size() < 3) throw InvalidInput("extrapolation needs at least three deltas");
  check_deltas(deltas);
  if (body.dim() != 2) throw Unsupported("floating limit is evaluated in 2-D only");

  Eigen::MatrixXd poly = boundary_polygon(body, 4096);
  const double area = polygon_area(poly);
  auto planes = cut_planes(poly, deltas, directions);

  const int k = static_cast<int>(deltas.size());
  const double front_factor = 2.0 * std::pow(2.0 / 3.0, 2.0 / 3.0);
  std::vector<double> x(k), d(k);
  for (int i = 0; i < k; ++i) {
    double cut_area = polygon_area(halfplane_polygon(planes[i]));
    x[i] = std::pow(deltas[i], 2.0 / 3.0);
    d[i] = front_factor * (area - cut_area) / std::pow(deltas[i] * area, 2.0 / 3.0);
  }

  // Neville table toward x = 0; pick the column whose last refinement moved
  // the least.
  std::vector<std::vector<double>> T(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i) T[i][0] = d[k - 1 - i];  // smallest delta first
  std::vector<double> xs(k);
  for (int i = 0; i < k; ++i) xs[i] = x[k - 1 - i];
  for (int j = 1; j < k; ++j)
    for (int i = 0; i + j < k; ++i)
      T[i][j] = (xs[i] * T[i + 1][j - 1] - xs[i + j] * T[i][j - 1]) / (xs[i] - xs[i + j]);

  std::vector<double> diff(k, 0.0);
  int best_j = 0;
  for (int j = 1; j < k; ++j) {
    diff[j] = std::abs(T[0][j] - T[0][j - 1]);
    if (best_j == 0 || diff[j] <= diff[best_j]) best_j = j;
  }

  // Error estimate. When the column-to-column movement shrinks geometrically
  // the remaining tail is bounded by the last step. When it does not, the
  // data contains a term outside the polynomial model (flat boundary pieces
  // contribute delta^{1/3}·log(1/delta), which extrapolation cannot remove),
  // so the only safe bound is the total correction the table applied.
  double ratio = 0.0;
  for (int j = 2; j <= best_j; ++j)
    if (diff[j - 1] > 0.0) ratio = std::max(ratio, diff[j] / diff[j - 1]);
  double err;
  if (best_j == 0)
    err = std::abs(T[0][0]);
  else if (ratio <= 0.5)
    err = 2.0 * diff[best_j];
  else
    err = diff[best_j] + std::abs(T[0][best_j] - T[0][0]);

  AspValue out;
  out.p = 1.0;
  out.method = "floating_limit";
  out.value = std::max(0.0, T[0][best_j]);
  out.error_estimate = err;
  return out;
}

std::vector<double> default_floating_deltas() {
  std::vector<double> out;
  for (int kk = 0; kk <= 6; ++kk) out.push_back(0.02 * std::pow(2.0, -kk));
  return out;
}

}  // namespace affsurf
