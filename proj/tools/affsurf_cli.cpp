#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "affsurf/asp.hpp"
#include "affsurf/boundary2d.hpp"
#include "affsurf/corpus.hpp"
#include "affsurf/ellipsoid_fit.hpp"
#include "affsurf/errors.hpp"
#include "affsurf/extremal.hpp"
#include "affsurf/floating.hpp"
#include "affsurf/geometry.hpp"
#include "affsurf/json_io.hpp"
#include "affsurf/quermass.hpp"
#include "affsurf/sampling.hpp"
#include "affsurf/util.hpp"

using namespace affsurf;

namespace {

// Exit codes: 0 all pass, 1 bound violation, 2 input error, 3 domain error.
constexpr int kExitOk = 0;
constexpr int kExitBound = 1;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

// Values on the text format carry 6 significant digits; JSON keeps full
// precision.
std::string fmt6(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

std::string body_id_of(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

struct Options {
  std::string body_path;
  std::string format = "text";
  double p = 1.0;
  std::string kind = "IS";
  std::string method = "auto";
  double delta = 0.01;
  double tol = 1e-7;
  double c_thin = 1.0;
  long samples = 200000;
  int grid = 0;
  std::vector<double> t_grid;
  std::uint64_t seed = 0x5eedULL;
  int count = 50;
  int trials = 20;
  std::string suite;
  std::string corpus = "random2d";
};

ConvexBody load_body(const Options& opt) {
  if (opt.body_path.empty()) throw InvalidInput("--body is required");
  return body_from_file(opt.body_path);
}

void emit(const Options& opt, const ordered_json& j, const std::string& text) {
  if (opt.format == "json")
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

int cmd_asp(const Options& opt) {
  ConvexBody body = load_body(opt);
  AspValue value;
  if (opt.method == "auto") {
    value = asp(body, opt.p);
  } else if (opt.method == "closed") {
    value = asp_closed_form(body, opt.p);
  } else if (opt.method == "quadrature") {
    if (const auto* s = body.get_if<SupportBody2D>())
      value = asp_quadrature_2d(*s, opt.p, opt.grid);
    else if (const auto* e = body.get_if<Ellipsoid>(); e != nullptr && body.dim() == 2)
      value = asp_quadrature_2d(ellipsoid_support_body(*e), opt.p, opt.grid);
    else
      throw InvalidInput("--method quadrature needs a planar support2d or ellipsoid body");
  } else if (opt.method == "floating") {
    if (opt.p != 1.0) throw InvalidInput("the floating-body oracle evaluates p = 1 only");
    value = asp1_floating_limit_2d(body, default_floating_deltas());
  } else {
    throw InvalidInput("unknown --method " + opt.method);
  }
  std::string text = "value " + fmt6(value.value) + " method " + value.method +
                     " error_estimate " + fmt6(value.error_estimate) + "\n";
  if (value.infinite) text = "value inf method " + value.method + "\n";
  emit(opt, asp_to_json(body_id_of(opt.body_path), value), text);
  return kExitOk;
}

int cmd_floating(const Options& opt) {
  ConvexBody body = load_body(opt);
  FloatingBody fb = floating_body_2d(body, opt.delta, opt.grid > 0 ? opt.grid : 720);
  double parent_area = volume(fb.parent);
  double result_area = volume(fb.result);
  ordered_json j;
  j["body_id"] = body_id_of(opt.body_path);
  j["delta"] = opt.delta;
  j["parent_area"] = parent_area;
  j["result_area"] = result_area;
  j["result"] = body_to_json(fb.result);
  emit(opt, j,
       "delta " + fmt6(opt.delta) + " parent_area " + fmt6(parent_area) + " result_area " +
           fmt6(result_area) + "\n");
  return kExitOk;
}

int cmd_fit(const Options& opt, bool loewner) {
  ConvexBody body = load_body(opt);
  EllipsoidFit fit =
      loewner ? loewner_ellipsoid(body, opt.tol) : john_ellipsoid(body, opt.tol);
  emit(opt, ellipsoid_fit_to_json(fit),
       fit.kind + " containment_ratio " + fmt6(fit.containment_ratio) + " gap " +
           fmt6(fit.gap) + " iterations " + std::to_string(fit.iterations) + "\n");
  return kExitOk;
}

int cmd_isotropic(const Options& opt) {
  ConvexBody body = load_body(opt);
  IsotropicCertificate cert = isotropic_position(body, opt.samples, opt.seed);
  emit(opt, isotropic_to_json(cert),
       "L " + fmt6(cert.L) + " covariance_residual " + fmt6(cert.covariance_residual) +
           " volume_residual " + fmt6(cert.volume_residual) + " method " + cert.method +
           "\n");
  return kExitOk;
}

int cmd_santalo(const Options& opt) {
  ConvexBody body = load_body(opt);
  Eigen::VectorXd s = santalo_point(body, opt.tol);
  double product = volume_product(translate(body, Eigen::VectorXd(-s)));
  ordered_json j;
  j["body_id"] = body_id_of(opt.body_path);
  j["santalo_point"] = std::vector<double>(s.data(), s.data() + s.size());
  j["volume_product"] = product;
  std::ostringstream text;
  text << "santalo_point (";
  for (Eigen::Index i = 0; i < s.size(); ++i)
    text << (i ? ", " : "") << fmt6(s[i]);
  text << ") volume_product " << fmt6(product) << "\n";
  emit(opt, j, text.str());
  return kExitOk;
}

int cmd_extremal(const Options& opt) {
  ConvexBody body = load_body(opt);
  ExtremalKind kind;
  if (opt.kind == "IS")
    kind = ExtremalKind::kInnerMax;
  else if (opt.kind == "OS")
    kind = ExtremalKind::kOuterMax;
  else if (opt.kind == "os")
    kind = ExtremalKind::kOuterMin;
  else if (opt.kind == "is")
    kind = ExtremalKind::kInnerMin;
  else
    throw InvalidInput("--kind must be IS, OS, os or is");

  ExtremalConfig config;
  config.tolerance = opt.tol;
  ExtremalEstimate est;
  if (auto closed = closed_form_extremal(body, kind, opt.p)) {
    est = std::move(*closed);
  } else if (kind == ExtremalKind::kInnerMax) {
    est = estimate_IS(body, opt.p, config);
  } else if (kind == ExtremalKind::kOuterMax) {
    est = estimate_OS(body, opt.p, config);
  } else {
    est = estimate_os(body, opt.p, config);
  }
  est.body_id = body_id_of(opt.body_path);

  if (opt.format == "csv") {
    std::cout << candidates_to_csv(est);
  } else {
    const BoundReport& b = est.bound_status;
    std::string text = kind_name(kind) + " p " + fmt6(opt.p) + " value " +
                       (est.infinite ? std::string("inf") : fmt6(est.value)) + " bound [" +
                       fmt6(b.lower) + ", " + fmt6(b.upper) + "] " +
                       (b.pass ? "pass" : "FAIL") + "\n";
    emit(opt, estimate_to_json(est), text);
  }
  return est.bound_status.pass ? kExitOk : kExitBound;
}

int cmd_thinshell(const Options& opt) {
  ConvexBody body = load_body(opt);
  IsotropicCertificate cert = isotropic_position(body, opt.samples, opt.seed);
  ConvexBody iso = apply_affine(cert.map, body);
  ThinShellCheck check = thin_shell_check(iso, opt.c_thin, opt.samples, opt.seed);

  ordered_json j;
  j["body_id"] = body_id_of(opt.body_path);
  j["c_thin"] = opt.c_thin;
  j["L"] = check.L;
  j["thin_shell_mass"] = check.mass;
  j["smallest_covering_c"] = check.smallest_covering_c;

  std::ostringstream text;
  text << "L " << fmt6(check.L) << " c_thin " << fmt6(opt.c_thin) << " mass "
       << fmt6(check.mass) << (check.mass >= 0.5 ? " (covers half)" : "") << "\n";

  const int n = body.dim();
  if (opt.c_thin < std::pow(n, 1.0 / 6.0)) {
    ShellPartition part = build_shell_partition(iso, opt.c_thin, opt.samples, opt.seed);
    SOSet so = build_SO(iso, part.R, opt.samples, opt.seed + 1);
    j["partition"] = shell_partition_to_json(part);
    j["SO"] = so_set_to_json(so);
    double floor = part.thin_shell_mass / (part.k_n + 1);
    text << "k_n " << part.k_n << " R " << fmt6(part.R) << " chosen_shell_mass "
         << fmt6(part.shells[part.chosen_index].mass) << " pigeonhole_floor "
         << fmt6(floor) << "\n"
         << "S_O volume " << fmt6(so.S_O_volume) << " sigma " << fmt6(so.sigma_O) << "\n";
    if (opt.format == "csv") {
      std::cout << shells_to_csv(part);
      return kExitOk;
    }
  } else {
    j["partition"] = nullptr;
    text << "shell partition unavailable: c_thin >= n^(1/6) makes the innermost radius "
            "nonpositive\n";
  }
  emit(opt, j, text.str());
  return kExitOk;
}

int cmd_quermass(const Options& opt) {
  ConvexBody body = load_body(opt);
  SteinerFit fit = steiner_fit(body, opt.t_grid, opt.samples, opt.seed);
  fit.body_id = body_id_of(opt.body_path);
  if (opt.format == "csv") {
    std::cout << steiner_to_csv(fit);
  } else {
    std::ostringstream text;
    text << "W = (";
    for (std::size_t i = 0; i < fit.W.size(); ++i) text << (i ? ", " : "") << fmt6(fit.W[i]);
    text << ") residual " << fmt6(fit.residual) << " method " << fit.method << "\n";
    emit(opt, steiner_to_json(fit), text.str());
  }
  return kExitOk;
}

// Ratio bound of the affine isoperimetric inequality for a planar body:
// as_p(K)/as_p(B) <= (|K|/|B|)^{(n-p)/(n+p)} for p >= 0, reversed on
// (-n, 0]; equality exactly on ellipsoids.
struct IsoCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

IsoCheck iso_check(const ConvexBody& body, double p, double slack) {
  const int n = body.dim();
  IsoCheck c;
  c.lhs = asp(body, p).value / (n * unit_ball_volume(n));
  c.rhs = std::pow(volume(body) / unit_ball_volume(n), affine_exponent(n, p));
  c.pass = p >= 0.0 ? c.lhs <= c.rhs + slack : c.lhs >= c.rhs - slack;
  return c;
}

int verify_iso(const Options& opt) {
  if (opt.corpus != "random2d") throw InvalidInput("unknown corpus " + opt.corpus);
  Rng rng(opt.seed);
  int pass = 0, total = 0;
  for (int i = 0; i < opt.count; ++i) {
    ConvexBody body = random_smooth_body(rng);
    for (double p : {0.5, 1.0, 1.5, -0.5, -1.0}) {
      ++total;
      if (iso_check(body, p, opt.tol).pass) ++pass;
    }
  }
  int eq_pass = 0, eq_total = 0;
  for (int i = 0; i < 10; ++i) {
    ConvexBody e = random_ellipse(rng);
    for (double p : {0.5, 1.0, 1.5}) {
      ++eq_total;
      IsoCheck c = iso_check(e, p, opt.tol);
      if (std::abs(c.lhs - c.rhs) <= opt.tol * std::max(1.0, std::abs(c.rhs))) ++eq_pass;
    }
  }
  std::cout << "iso-inequality " << pass << "/" << total << " pass, ellipsoid equality "
            << eq_pass << "/" << eq_total << " pass\n";
  return (pass == total && eq_pass == eq_total) ? kExitOk : kExitBound;
}

int verify_steiner(const Options& opt) {
  ConvexBody body = load_body(opt);
  SteinerFit fit = steiner_fit(body, opt.t_grid, opt.samples, opt.seed);
  std::ostringstream text;
  text << "W = (";
  for (std::size_t i = 0; i < fit.W.size(); ++i) text << (i ? ", " : "") << fmt6(fit.W[i]);
  text << ") residual " << fmt6(fit.residual) << "\n";
  std::cout << text.str();
  bool ok = fit.method != "exact" || fit.residual < 1e-8;
  return ok ? kExitOk : kExitBound;
}

int verify_equivariance(const Options& opt) {
  Rng rng(opt.seed);
  double worst = 0.0;
  for (int i = 0; i < opt.trials; ++i) {
    ConvexBody e = random_ellipse(rng);
    Eigen::Matrix2d T;
    if (rng.uniform() < 0.5) {
      T = Eigen::Vector2d(rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0)).asDiagonal();
    } else {
      double phi = rng.uniform(0.0, 2.0 * kPi);
      T << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    }
    ConvexBody image = apply_affine(AffineMap::linear_only(T), e);
    for (double p : {0.5, 1.0, 1.5}) {
      double base = asp(e, p).value;
      double expected = std::pow(std::abs(T.determinant()), affine_exponent(2, p)) * base;
      worst = std::max(worst, std::abs(asp(image, p).value - expected) / expected);
    }
  }
  std::cout << "equivariance max relative error " << fmt6(worst) << " over "
            << opt.trials << " maps\n";
  return worst < opt.tol ? kExitOk : kExitBound;
}

int verify_monotonicity(const Options& opt) {
  ConvexBody body = load_body(opt);
  ExtremalKind kind = opt.kind == "IS"   ? ExtremalKind::kInnerMax
                      : opt.kind == "OS" ? ExtremalKind::kOuterMax
                                         : ExtremalKind::kOuterMin;
  std::vector<double> grid;
  if (kind == ExtremalKind::kInnerMax)
    grid = {0.5, 1.0, 1.5, 2.0};
  else if (kind == ExtremalKind::kOuterMax)
    grid = {3.0, 4.0, 6.0};
  else
    grid = {-1.5, -1.0, -0.5};
  std::vector<BoundReport> reports = verify_monotonicity(body, kind, grid);
  bool all = true;
  for (const BoundReport& r : reports) {
    all = all && r.pass;
    std::cout << r.quantity << " value " << fmt6(r.value) << " "
              << (r.pass ? "pass" : "WARN") << "\n";
  }
  return all ? kExitOk : kExitBound;
}

int cmd_verify(const Options& opt) {
  if (opt.suite == "iso-inequality") return verify_iso(opt);
  if (opt.suite == "steiner") return verify_steiner(opt);
  if (opt.suite == "equivariance") return verify_equivariance(opt);
  if (opt.suite == "monotonicity") return verify_monotonicity(opt);
  throw InvalidInput("unknown suite " + opt.suite +
                     " (expected iso-inequality, steiner, equivariance or monotonicity)");
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("AFFSURF_THREADS")) {
    int t = std::atoi(threads);
    if (t > 0) Eigen::setNbThreads(t);
  }

  CLI::App app{"L_p affine surface areas, extremal estimates and related "
               "convex-geometry reports"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--body", opt.body_path, "body JSON file");
    cmd->add_option("--format", opt.format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--samples", opt.samples, "Monte Carlo sample count");
    cmd->add_option("--tol", opt.tol, "tolerance / slack");
  };

  CLI::App* asp_cmd = app.add_subcommand("asp", "L_p affine surface area of a body");
  add_common(asp_cmd);
  asp_cmd->add_option("--p", opt.p, "exponent p (p != -n)");
  asp_cmd->add_option("--method", opt.method, "auto | closed | quadrature | floating");
  asp_cmd->add_option("--grid", opt.grid, "quadrature grid size");

  CLI::App* floating_cmd = app.add_subcommand("floating", "floating body K_delta");
  add_common(floating_cmd);
  floating_cmd->add_option("--delta", opt.delta, "cap area fraction in (0, 1/2)");
  floating_cmd->add_option("--grid", opt.grid, "direction count");

  CLI::App* mvee_cmd = app.add_subcommand("mvee", "minimum-volume enclosing ellipsoid");
  add_common(mvee_cmd);
  CLI::App* john_cmd = app.add_subcommand("john", "maximum-volume inscribed ellipsoid");
  add_common(john_cmd);

  CLI::App* iso_cmd = app.add_subcommand("isotropic", "isotropic position and constant");
  add_common(iso_cmd);

  CLI::App* santalo_cmd = app.add_subcommand("santalo", "Santalo point and volume product");
  add_common(santalo_cmd);

  CLI::App* extremal_cmd =
      app.add_subcommand("extremal", "extremal affine surface area estimate");
  add_common(extremal_cmd);
  extremal_cmd->add_option("--kind", opt.kind, "IS | OS | os | is");
  extremal_cmd->add_option("--p", opt.p, "exponent p");

  CLI::App* thinshell_cmd =
      app.add_subcommand("thinshell", "thin-shell mass and dyadic shell partition");
  add_common(thinshell_cmd);
  thinshell_cmd->add_option("--c-thin", opt.c_thin, "shell half-width multiplier");

  CLI::App* quermass_cmd = app.add_subcommand("quermass", "Steiner fit of quermassintegrals");
  add_common(quermass_cmd);
  quermass_cmd->add_option("--grid", opt.t_grid, "Steiner t values")->delimiter(',');

  CLI::App* verify_cmd = app.add_subcommand("verify", "property suites");
  add_common(verify_cmd);
  verify_cmd->add_option("suite", opt.suite,
                         "iso-inequality | steiner | equivariance | monotonicity");
  verify_cmd->add_option("--corpus", opt.corpus, "body corpus name");
  verify_cmd->add_option("--n", opt.count, "corpus size");
  verify_cmd->add_option("--trials", opt.trials, "number of random maps");
  verify_cmd->add_option("--kind", opt.kind, "extremal kind for monotonicity");
  verify_cmd->add_option("--p", opt.p, "exponent p");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (asp_cmd->parsed()) return cmd_asp(opt);
    if (floating_cmd->parsed()) return cmd_floating(opt);
    if (mvee_cmd->parsed()) return cmd_fit(opt, true);
    if (john_cmd->parsed()) return cmd_fit(opt, false);
    if (iso_cmd->parsed()) return cmd_isotropic(opt);
    if (santalo_cmd->parsed()) return cmd_santalo(opt);
    if (extremal_cmd->parsed()) return cmd_extremal(opt);
    if (thinshell_cmd->parsed()) return cmd_thinshell(opt);
    if (quermass_cmd->parsed()) return cmd_quermass(opt);
    if (verify_cmd->parsed()) return cmd_verify(opt);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const InvalidInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
