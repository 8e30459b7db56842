#include "affsurf/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <utility>

#include "affsurf/boundary2d.hpp"
#include "affsurf/ellipsoid_fit.hpp"
#include "affsurf/errors.hpp"
#include "affsurf/floating.hpp"
#include "affsurf/util.hpp"

namespace affsurf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// n |B|^{2p/(n+p)} |K|^{(n-p)/(n+p)}: the value every as_p comparison against
// the ball reduces to. Reproduces n|K| at p = 0 and n|B| at p = n.
double ball_reference(int n, double p, double vol) {
  const double ae = affine_exponent(n, p);
  return n * std::pow(unit_ball_volume(n), 1.0 - ae) * std::pow(vol, ae);
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Eigen::Vector2d angle_dir(double theta) {
  return Eigen::Vector2d(std::cos(theta), std::sin(theta));
}

void require_planar_centered(const ConvexBody& body) {
  if (body.dim() != 2) throw Unsupported("extremal search is planar only");
  const double scale = circumradius_origin(body);
  if (centroid(body).norm() > 1e-6 * scale)
    throw NotCentered("extremal search expects the centroid at the origin");
}

bool origin_symmetric(const ConvexBody& body, int grid) {
  const double scale = circumradius_origin(body);
  for (int j = 0; j < grid / 2; ++j) {
    Eigen::VectorXd u = angle_dir(2.0 * kPi * j / grid);
    if (std::abs(support(body, u) - support(body, -u)) > 1e-9 * scale) return false;
  }
  return true;
}

// Keeps the running best candidate; ties resolve to the earliest index so
// logs identify a deterministic winner.
struct CandidateSearch {
  explicit CandidateSearch(bool maximize) : maximize_(maximize) {}

  void consider(std::string descriptor, double value, std::optional<ConvexBody> candidate) {
    log.push_back({std::move(descriptor), value});
    const bool better =
        !best_body.has_value() || (maximize_ ? value > best_value : value < best_value);
    if (better && candidate.has_value()) {
      best_value = value;
      best_body = std::move(candidate);
      best_index = static_cast<int>(log.size()) - 1;
    }
  }

  std::vector<CandidateValue> log;
  double best_value = 0.0;
  std::optional<ConvexBody> best_body;
  int best_index = -1;

 private:
  bool maximize_;
};

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(count);
  if (count <= 1 || !(hi > lo)) {
    out.push_back(hi);
    return out;
  }
  for (int j = 0; j < count; ++j)
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(j) / (count - 1)));
  out.back() = hi;
  return out;
}

// Polygon through boundary samples (exact vertices for polytope inputs),
// inscribed by construction.
ConvexBody inscribed_polygon(const ConvexBody& body, int m) {
  return make_vpolytope(boundary_polygon(body, m), Center::kKeep);
}

// Intersection of supporting half-planes at m directions, enclosing by
// construction.
ConvexBody tangent_polygon(const ConvexBody& body, int m) {
  Eigen::MatrixXd normals(m, 2);
  Eigen::VectorXd offsets(m);
  for (int j = 0; j < m; ++j) {
    Eigen::Vector2d u = angle_dir(2.0 * kPi * j / m);
    normals.row(j) = u;
    offsets[j] = support(body, u);
  }
  return make_hpolytope(normals, offsets, Center::kKeep);
}

// Minkowski average of rotated copies of the floating body (a circular
// moving average of its support samples), rescaled to sit inside the parent.
// The averaging spreads the polygon's curvature atoms into a continuous
// density, which is what makes as_p positive for p > 0.
std::optional<std::pair<ConvexBody, double>> smoothed_floating_candidate(const ConvexBody& body,
                                                                         double delta, double p,
                                                                         int fine_grid) {
  try {
    FloatingBody fb = floating_body_2d(body, delta, 720);
    const int m = 1024;
    Eigen::VectorXd hs(m);
    for (int j = 0; j < m; ++j) hs[j] = support(fb.result, angle_dir(2.0 * kPi * j / m));

    const int w = 16;
    auto smooth_pass = [&](const Eigen::VectorXd& v) {
      Eigen::VectorXd out(m);
      for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int k = -w; k <= w; ++k) s += v[(j + k + m) % m];
        out[j] = s / (2 * w + 1);
      }
      return out;
    };
    SupportBody2D averaged = SupportBody2D::from_samples(smooth_pass(smooth_pass(hs)));

    double scale = kInf;
    const int fine = std::max(fine_grid, 4 * m);
    for (int j = 0; j < fine; ++j) {
      double theta = 2.0 * kPi * j / fine;
      scale = std::min(scale, support(body, angle_dir(theta)) / averaged.h_at(theta));
    }
    scale = std::min(1.0, scale) * (1.0 - 1e-9);

    SupportBody2D fitted = SupportBody2D::from_samples(scale * averaged.h());
    fitted.validate();
    Eigen::Vector2d g = fitted.centroid_integral() / fitted.area();
    AspValue av = asp_quadrature_2d(fitted.translated(-g), p);
    return std::make_pair(make_support_body(fitted, Center::kKeep), av.value);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Downhill simplex minimization; returns the best vertex found.
Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x0, double step, int iterations) {
  const int d = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> xs(d + 1, x0);
  std::vector<double> fs(d + 1);
  for (int i = 1; i <= d; ++i) xs[i][i - 1] += step;
  for (int i = 0; i <= d; ++i) fs[i] = f(xs[i]);

  for (int it = 0; it < iterations; ++it) {
    int lo = 0, hi = 0, hi2 = 0;
    for (int i = 1; i <= d; ++i) {
      if (fs[i] < fs[lo]) lo = i;
      if (fs[i] > fs[hi]) hi = i;
    }
    for (int i = 0; i <= d; ++i)
      if (i != hi && fs[i] > fs[hi2]) hi2 = i;

    Eigen::VectorXd mid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i <= d; ++i)
      if (i != hi) mid += xs[i];
    mid /= d;

    Eigen::VectorXd refl = mid + (mid - xs[hi]);
    double fr = f(refl);
    if (fr < fs[lo]) {
      Eigen::VectorXd exp = mid + 2.0 * (mid - xs[hi]);
      double fe = f(exp);
      if (fe < fr) {
        xs[hi] = exp;
        fs[hi] = fe;
      } else {
        xs[hi] = refl;
        fs[hi] = fr;
      }
    } else if (fr < fs[hi2]) {
      xs[hi] = refl;
      fs[hi] = fr;
    } else {
      Eigen::VectorXd con = mid + 0.5 * ((fr < fs[hi] ? refl : xs[hi]) - mid);
      double fc = f(con);
      if (fc < std::min(fr, fs[hi])) {
        xs[hi] = con;
        fs[hi] = fc;
      } else {
        for (int i = 0; i <= d; ++i) {
          if (i == lo) continue;
          xs[i] = xs[lo] + 0.5 * (xs[i] - xs[lo]);
          fs[i] = f(xs[i]);
        }
      }
    }
  }
  int lo = 0;
  for (int i = 1; i <= d; ++i)
    if (fs[i] < fs[lo]) lo = i;
  return xs[lo];
}

// Local volume polish over enclosing ellipses (x - c)' L L' (x - c) <= 1,
// parameterized by center and Cholesky factor; containment is enforced on
// the body's boundary polygon (exact vertices for polytopes). Returns the
// smallest-volume feasible ellipse found, starting from `start`.
std::optional<Ellipsoid> polish_enclosing_ellipse(const ConvexBody& body, const Ellipsoid& start,
                                                  int angle_grid, int iterations) {
  Eigen::MatrixXd pts = boundary_polygon(body, angle_grid);
  const bool exact_boundary =
      body.get_if<HPolytope>() != nullptr || body.get_if<VPolytope>() != nullptr;
  const double margin = exact_boundary ? 1.0 + 1e-12 : 1.0 - 1e-7;

  Eigen::LLT<Eigen::Matrix2d> llt(start.shape);
  if (llt.info() != Eigen::Success) return std::nullopt;
  Eigen::Matrix2d L0 = llt.matrixL();

  auto unpack = [](const Eigen::VectorXd& x) {
    Eigen::Vector2d c(x[0], x[1]);
    Eigen::Matrix2d L;
    L << x[2], 0.0, x[3], x[4];
    return std::make_pair(c, Eigen::Matrix2d(L * L.transpose()));
  };
  auto objective = [&](const Eigen::VectorXd& x) {
    if (!(x[2] > 1e-12) || !(x[4] > 1e-12)) return kInf;
    auto [c, A] = unpack(x);
    for (int i = 0; i < pts.rows(); ++i) {
      Eigen::Vector2d d = pts.row(i).transpose() - c;
      if (d.dot(A * d) > margin) return kInf;
    }
    return -std::log(A.determinant());
  };

  Eigen::VectorXd x0(5);
  x0 << start.center[0], start.center[1], L0(0, 0), L0(1, 0), L0(1, 1);
  if (!std::isfinite(objective(x0))) return std::nullopt;
  Eigen::VectorXd best = nelder_mead(objective, x0, 0.05 * L0(0, 0), iterations);
  if (!std::isfinite(objective(best))) return std::nullopt;
  auto [c, A] = unpack(best);
  Ellipsoid out;
  out.center = c;
  out.shape = A;
  return out;
}

ExtremalEstimate make_closed(const ConvexBody& body, ExtremalKind kind, double p, double value,
                             bool infinite, std::optional<ConvexBody> witness,
                             const std::string& note) {
  ExtremalEstimate est;
  est.kind = kind;
  est.p = p;
  est.body_id = body.kind();
  est.value = value;
  est.infinite = infinite;
  est.witness = std::move(witness);
  est.bound_status.quantity = kind_name(kind) + "_p degenerate range";
  est.bound_status.lower = value;
  est.bound_status.value = value;
  est.bound_status.upper = value;
  est.bound_status.pass = true;
  est.bound_status.provenance = note;
  return est;
}

}  // namespace

std::string kind_name(ExtremalKind kind) {
  switch (kind) {
    case ExtremalKind::kInnerMax:
      return "IS";
    case ExtremalKind::kOuterMax:
      return "OS";
    case ExtremalKind::kOuterMin:
      return "os";
    case ExtremalKind::kInnerMin:
      return "is";
  }
  return "?";
}

std::optional<ExtremalEstimate> closed_form_extremal(const ConvexBody& body, ExtremalKind kind,
                                                     double p) {
  const int n = body.dim();
  const double nd = static_cast<double>(n);
  if (p == -nd) return std::nullopt;
  const double nw = n * unit_ball_volume(n);

  switch (kind) {
    case ExtremalKind::kInnerMax:
      if (p == 0.0)
        return make_closed(body, kind, p, nd * volume(body), false, body,
                           "n|K|, attained by the body itself");
      if (p == nd)
        return make_closed(body, kind, p, nw, false, make_ball(n, inradius_origin(body)),
                           "n|B|, attained by any inscribed ball");
      if (p > nd || p < 0.0)
        return make_closed(body, kind, p, kInf, true, std::nullopt,
                           "divergent range of the inner supremum");
      return std::nullopt;

    case ExtremalKind::kOuterMax:
      if (p == nd)
        return make_closed(body, kind, p, nw, false, make_ball(n, circumradius_origin(body)),
                           "n|B|, attained by any enclosing ball");
      if (p < nd)
        return make_closed(body, kind, p, kInf, true, std::nullopt,
                           "divergent range of the outer supremum");
      return std::nullopt;

    case ExtremalKind::kOuterMin:
      if (p == 0.0)
        return make_closed(body, kind, p, nd * volume(body), false, body,
                           "n|K|, attained by the body itself");
      if (p > 0.0 || p < -nd) {
        std::optional<ConvexBody> witness;
        if (n == 2) witness = tangent_polygon(body, 16);
        return make_closed(body, kind, p, 0.0, false, std::move(witness),
                           "vanishes on enclosing polytopes");
      }
      return std::nullopt;

    case ExtremalKind::kInnerMin: {
      std::optional<ConvexBody> witness;
      std::string note = "limit of shrinking inscribed balls";
      if ((p > 0.0 || p < -nd) && n == 2) {
        witness = inscribed_polygon(body, 16);
        note = "vanishes on inscribed polytopes";
      }
      return make_closed(body, kind, p, 0.0, false, std::move(witness), note);
    }
  }
  return std::nullopt;
}

ExtremalEstimate estimate_IS(const ConvexBody& body, double p, const ExtremalConfig& config) {
  require_planar_centered(body);
  const int n = body.dim();
  if (!(p > 0.0) || !(p < static_cast<double>(n)))
    throw POutOfRange("inner supremum search needs 0 < p < n");

  CandidateSearch search(true);
  double ellipsoid_floor = 0.0;

  EllipsoidFit john = john_ellipsoid(body);
  for (double lambda : log_spaced(0.2, 1.0, config.lambda_grid)) {
    Ellipsoid dil{john.ellipsoid.center, john.ellipsoid.shape / (lambda * lambda)};
    ConvexBody cand = make_ellipsoid(dil.center, dil.shape);
    double v = asp_closed_form(cand, p).value;
    if (lambda == 1.0) ellipsoid_floor = v;
    search.consider("inscribed ellipsoid dilate lambda=" + format_value(lambda), v,
                    std::move(cand));
  }

  const double inr = inradius_origin(body);
  const double circ = circumradius_origin(body);
  for (double R : log_spaced(inr, circ, config.r_grid)) {
    ConvexBody cand = intersect_ball(body, R);
    AspValue av = asp(cand, p);
    search.consider("intersection with ball R=" + format_value(R), av.value, std::move(cand));
  }

  for (double delta : config.floating_deltas) {
    auto cand = smoothed_floating_candidate(body, delta, p, config.angle_grid);
    if (!cand) continue;
    search.consider("smoothed floating body delta=" + format_value(delta), cand->second,
                    std::move(cand->first));
  }

  ExtremalEstimate est;
  est.kind = ExtremalKind::kInnerMax;
  est.p = p;
  est.body_id = body.kind();
  est.value = search.best_value;
  est.witness = std::move(search.best_body);
  est.candidate_log = std::move(search.log);
  est.bound_status.quantity = "IS_" + format_value(p);
  est.bound_status.lower = ellipsoid_floor;
  est.bound_status.value = est.value;
  est.bound_status.upper = ball_reference(n, p, volume(body));
  est.bound_status.tolerance = config.tolerance;
  est.bound_status.pass = est.bound_status.lower - config.tolerance <= est.value &&
                          est.value <= est.bound_status.upper + config.tolerance;
  est.bound_status.provenance =
      "lower: inscribed ellipsoid of maximal volume; upper: isoperimetric ball bound";
  return est;
}

ExtremalEstimate estimate_os(const ConvexBody& body, double p, const ExtremalConfig& config) {
  require_planar_centered(body);
  const int n = body.dim();
  if (!(p > -static_cast<double>(n)) || !(p < 0.0))
    throw POutOfRange("outer infimum search needs -n < p < 0");

  CandidateSearch search(false);

  EllipsoidFit loewner = loewner_ellipsoid(body);
  for (double lambda : log_spaced(1.0, 2.0, config.lambda_grid)) {
    Ellipsoid dil{loewner.ellipsoid.center, loewner.ellipsoid.shape / (lambda * lambda)};
    ConvexBody cand = make_ellipsoid(dil.center, dil.shape);
    double v = asp_closed_form(cand, p).value;
    search.consider("enclosing ellipsoid dilate lambda=" + format_value(lambda), v,
                    std::move(cand));
  }

  if (auto polished = polish_enclosing_ellipse(body, loewner.ellipsoid, config.angle_grid,
                                               config.polish_iterations)) {
    ConvexBody cand = make_ellipsoid(polished->center, polished->shape);
    double v = asp_closed_form(cand, p).value;
    search.consider("volume-polished enclosing ellipse", v, std::move(cand));
  }

  ExtremalEstimate est;
  est.kind = ExtremalKind::kOuterMin;
  est.p = p;
  est.body_id = body.kind();
  est.value = search.best_value;
  est.witness = std::move(search.best_body);
  est.candidate_log = std::move(search.log);

  const double base = ball_reference(n, p, volume(body));
  const double exponent = origin_symmetric(body, config.angle_grid)
                              ? 0.5 * n * affine_exponent(n, p)
                              : n * affine_exponent(n, p);
  est.bound_status.quantity = "os_" + format_value(p);
  est.bound_status.lower = base;
  est.bound_status.value = est.value;
  est.bound_status.upper = std::pow(static_cast<double>(n), exponent) * base;
  est.bound_status.tolerance = config.tolerance;
  est.bound_status.pass = est.bound_status.lower - config.tolerance <= est.value &&
                          est.value <= est.bound_status.upper + config.tolerance;
  est.bound_status.provenance =
      "lower: isoperimetric ball bound; upper: enclosing-ellipsoid construction";
  return est;
}

ExtremalEstimate estimate_OS(const ConvexBody& body, double p, const ExtremalConfig& config) {
  require_planar_centered(body);
  const int n = body.dim();
  const bool p_infinite = std::isinf(p) && p > 0.0;
  if (!p_infinite && !(p > static_cast<double>(n)))
    throw POutOfRange("outer supremum search needs n < p <= infinity");

  CandidateSearch search(true);

  EllipsoidFit loewner = loewner_ellipsoid(body);
  for (double lambda : log_spaced(1.0, 4.0, config.lambda_grid)) {
    Ellipsoid dil{loewner.ellipsoid.center, loewner.ellipsoid.shape / (lambda * lambda)};
    ConvexBody cand = make_ellipsoid(dil.center, dil.shape);
    double v = asp_closed_form(cand, p).value;
    search.consider("enclosing ellipsoid dilate lambda=" + format_value(lambda), v,
                    std::move(cand));
  }

  const double circ = circumradius_origin(body);
  const double min_h = inradius_origin(body);
  for (double R : log_spaced(std::min(min_h * 1.01, circ), circ, config.r_grid)) {
    ConvexBody cand = convex_hull_with_ball(body, R);
    AspValue av = asp(cand, p);
    search.consider("hull with ball R=" + format_value(R), av.value, std::move(cand));
  }

  for (double R : log_spaced(circ, 4.0 * circ, config.r_grid)) {
    ConvexBody cand = make_ball(n, R);
    double v = asp_closed_form(cand, p).value;
    search.consider("enclosing ball R=" + format_value(R), v, std::move(cand));
  }

  if (auto polished = polish_enclosing_ellipse(body, loewner.ellipsoid, config.angle_grid,
                                               config.polish_iterations)) {
    ConvexBody cand = make_ellipsoid(polished->center, polished->shape);
    double v = asp_closed_form(cand, p).value;
    search.consider("volume-polished enclosing ellipse", v, std::move(cand));
  }

  ExtremalEstimate est;
  est.kind = ExtremalKind::kOuterMax;
  est.p = p;
  est.body_id = body.kind();
  est.value = search.best_value;
  est.witness = std::move(search.best_body);
  est.candidate_log = std::move(search.log);

  const double base = ball_reference(n, p, volume(body));
  est.bound_status.quantity = "OS_" + format_value(p);
  est.bound_status.lower = std::pow(static_cast<double>(n), n * affine_exponent(n, p)) * base;
  est.bound_status.value = est.value;
  est.bound_status.upper = base;
  est.bound_status.tolerance = config.tolerance;
  est.bound_status.pass = est.bound_status.lower - config.tolerance <= est.value &&
                          est.value <= est.bound_status.upper + config.tolerance;
  est.bound_status.provenance =
      "lower: enclosing-ellipsoid construction with the n-power factor; "
      "upper: isoperimetric ball bound";
  return est;
}

ExtremalEstimate range_probe(const ConvexBody& body, ExtremalKind kind, double p,
                             const ExtremalConfig& config) {
  const int n = body.dim();
  const double nd = static_cast<double>(n);
  if (p == -nd) throw NotDivergentRange("as_p is undefined at p = -n");
  const int count = std::max(5, config.probe_witnesses);

  ExtremalEstimate est;
  est.kind = kind;
  est.p = p;
  est.body_id = body.kind();

  double limit = 0.0;
  std::string family;

  auto log_value = [&](const std::string& desc, double v, std::optional<ConvexBody> witness) {
    est.candidate_log.push_back({desc, v});
    if (witness) est.witness = std::move(witness);
  };

  switch (kind) {
    case ExtremalKind::kInnerMax: {
      if (p > nd || (p < 0.0 && p > -nd) || p < -nd) {
        limit = kInf;
        if (p > -nd && p < 0.0) {
          family = "inscribed polygons";
          if (n != 2) throw Unsupported("polygon probes are planar only");
          for (int k = 0; k < count; ++k) {
            ConvexBody poly = inscribed_polygon(body, 8 + 4 * k);
            double v = asp(poly, p).value;
            log_value("inscribed polygon m=" + std::to_string(8 + 4 * k), v, std::move(poly));
          }
        } else {
          family = "shrinking inscribed balls";
          const double inr = inradius_origin(body);
          for (int k = 0; k < count; ++k) {
            double eps = inr * std::pow(2.0, -k);
            ConvexBody ball = make_ball(n, eps);
            double v = asp_closed_form(ball, p).value;
            log_value("inscribed ball radius=" + format_value(eps), v, std::move(ball));
          }
        }
        break;
      }
      throw NotDivergentRange("inner supremum is finite for 0 <= p <= n");
    }

    case ExtremalKind::kOuterMax: {
      if (p < nd && p > -nd) {
        limit = kInf;
        family = "growing enclosing balls";
        const double circ = circumradius_origin(body);
        for (int k = 0; k < count; ++k) {
          double R = circ * std::pow(2.0, k);
          ConvexBody ball = make_ball(n, R);
          double v = asp_closed_form(ball, p).value;
          log_value("enclosing ball R=" + format_value(R), v, std::move(ball));
        }
        break;
      }
      if (p < -nd) {
        if (n != 2) throw Unsupported("rounded-box probes are planar only");
        limit = kInf;
        family = "corner-rounded enclosing boxes";
        const double t = circumradius_origin(body);
        for (int k = 0; k < count; ++k) {
          double eps = t * std::pow(2.0, -(k + 1));
          Boundary2D bd = rounded_box_boundary(t, t, eps);
          bool infinite = false;
          double v = bd.asp(p, Eigen::Vector2d::Zero(), infinite);
          log_value("rounded box eps=" + format_value(eps), infinite ? kInf : v, std::nullopt);
        }
        break;
      }
      throw NotDivergentRange("outer supremum is finite for n <= p <= infinity");
    }

    case ExtremalKind::kOuterMin: {
      if (p > 0.0 || p < -nd) {
        if (n != 2) throw Unsupported("polygon probes are planar only");
        limit = 0.0;
        family = "enclosing polygons";
        for (int k = 0; k < count; ++k) {
          ConvexBody poly = tangent_polygon(body, 8 + 4 * k);
          double v = asp(poly, p).value;
          log_value("enclosing polygon m=" + std::to_string(8 + 4 * k), v, std::move(poly));
        }
        break;
      }
      throw NotDivergentRange("outer infimum is finite for -n < p <= 0");
    }

    case ExtremalKind::kInnerMin: {
      limit = 0.0;
      if (p > 0.0 || p < -nd) {
        if (n != 2) throw Unsupported("polygon probes are planar only");
        family = "inscribed polygons";
        for (int k = 0; k < count; ++k) {
          ConvexBody poly = inscribed_polygon(body, 8 + 4 * k);
          double v = asp(poly, p).value;
          log_value("inscribed polygon m=" + std::to_string(8 + 4 * k), v, std::move(poly));
        }
      } else {
        family = "shrinking inscribed balls";
        const double inr = inradius_origin(body);
        for (int k = 0; k < count; ++k) {
          double eps = inr * std::pow(2.0, -k);
          ConvexBody ball = make_ball(n, eps);
          double v = asp_closed_form(ball, p).value;
          log_value("inscribed ball radius=" + format_value(eps), v, std::move(ball));
        }
      }
      break;
    }
  }

  est.value = limit;
  est.infinite = std::isinf(limit);
  est.bound_status.quantity = kind_name(kind) + "_" + format_value(p) + " range probe";
  est.bound_status.lower = est.infinite ? est.candidate_log.front().value : 0.0;
  est.bound_status.upper = est.infinite ? kInf : est.candidate_log.front().value;
  est.bound_status.value = est.candidate_log.back().value;
  est.bound_status.tolerance = 0.0;
  est.bound_status.pass = est.bound_status.lower - 0.0 <= est.bound_status.value &&
                          est.bound_status.value <= est.bound_status.upper;
  est.bound_status.provenance = family;
  return est;
}

namespace {

double extremal_value(const ConvexBody& body, ExtremalKind kind, double p,
                      const ExtremalConfig& config) {
  if (auto closed = closed_form_extremal(body, kind, p)) return closed->value;
  switch (kind) {
    case ExtremalKind::kInnerMax:
      return estimate_IS(body, p, config).value;
    case ExtremalKind::kOuterMax:
      return estimate_OS(body, p, config).value;
    case ExtremalKind::kOuterMin:
      return estimate_os(body, p, config).value;
    case ExtremalKind::kInnerMin:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

std::vector<BoundReport> verify_monotonicity(const ConvexBody& body, ExtremalKind kind,
                                             const std::vector<double>& p_grid,
                                             const ExtremalConfig& config) {
  if (kind == ExtremalKind::kInnerMin)
    throw Unsupported("the inner infimum vanishes identically; no monotone map");
  const int n = body.dim();
  const bool increasing = kind == ExtremalKind::kInnerMax;
  for (double p : p_grid) {
    if (std::isinf(p) || (increasing && p == 0.0))
      throw POutOfRange("the normalized map needs finite p (nonzero for IS)");
  }
  const double normalizer =
      increasing ? n * volume(body) : n * volume(polar(body));

  std::vector<double> map_values;
  map_values.reserve(p_grid.size());
  for (double p : p_grid) {
    double v = extremal_value(body, kind, p, config);
    double exponent = increasing ? (n + p) / p : (n + p);
    map_values.push_back(std::pow(v / normalizer, exponent));
  }

  std::vector<BoundReport> reports;
  for (std::size_t i = 0; i + 1 < p_grid.size(); ++i) {
    BoundReport r;
    r.quantity = kind_name(kind) + " normalized map on [" + format_value(p_grid[i]) + ", " +
                 format_value(p_grid[i + 1]) + "]";
    r.tolerance = config.tolerance * (1.0 + std::abs(map_values[i]));
    r.value = map_values[i + 1];
    if (increasing) {
      r.lower = map_values[i];
      r.upper = kInf;
    } else {
      r.lower = 0.0;
      r.upper = map_values[i];
    }
    r.pass = r.lower - r.tolerance <= r.value && r.value <= r.upper + r.tolerance;
    r.provenance = "estimates are one-sided bounds; a reversal within the "
                   "tolerance is a warning, not a failure";
    reports.push_back(std::move(r));
  }
  return reports;
}

BoundReport perturbation_smoke(const ConvexBody& body, ExtremalKind kind, double p, double eps,
                               const ExtremalConfig& config) {
  const int n = body.dim();
  if (!(eps >= 0.0)) throw InvalidInput("perturbation size must be nonnegative");
  const double rho = inradius_origin(body);
  const double t = eps / rho;
  if (!(t < 1.0)) throw InvalidInput("perturbation must be smaller than the inradius");

  const double v0 = extremal_value(body, kind, p, config);
  const double vp =
      extremal_value(apply_affine(AffineMap::scaling(n, 1.0 + t), body), kind, p, config);
  const double vm =
      extremal_value(apply_affine(AffineMap::scaling(n, 1.0 - t), body), kind, p, config);

  auto ordered_ratio = [](double a, double b) {
    if (a == b) return 1.0;
    return std::max(a, b) / std::min(a, b);
  };

  BoundReport r;
  r.quantity = kind_name(kind) + "_" + format_value(p) + " perturbation envelope";
  r.lower = 1.0;
  r.value = std::max(ordered_ratio(vp, v0), ordered_ratio(vm, v0));
  const double m = n * std::abs(affine_exponent(n, p));
  r.upper = std::pow(1.0 - t, -m);
  r.tolerance = std::max(config.tolerance, 1e-6 * r.upper);
  r.pass = r.lower - r.tolerance <= r.value && r.value <= r.upper + r.tolerance;
  r.provenance = "scaling envelope from the equivariance of the candidate families";
  return r;
}

}  // namespace affsurf
