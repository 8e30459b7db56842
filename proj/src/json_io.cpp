#include "affsurf/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "affsurf/errors.hpp"

namespace affsurf {

namespace {

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return rows;
}

Eigen::VectorXd vector_from_json(const ordered_json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InvalidInput(std::string(what) + " must be a nonempty array");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InvalidInput(std::string(what) + " entries must be numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const ordered_json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InvalidInput(std::string(what) + " must be a nonempty array of rows");
  Eigen::VectorXd first = vector_from_json(j[0], what);
  Eigen::MatrixXd m(j.size(), first.size());
  m.row(0) = first;
  for (std::size_t i = 1; i < j.size(); ++i) {
    Eigen::VectorXd row = vector_from_json(j[i], what);
    if (row.size() != m.cols()) throw InvalidInput(std::string(what) + " rows have unequal length");
    m.row(static_cast<Eigen::Index>(i)) = row;
  }
  return m;
}

const ordered_json& field(const ordered_json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw InvalidInput(std::string("missing field \"") + name + "\"");
  return *it;
}

}  // namespace

ordered_json double_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double json_to_double(const ordered_json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InvalidInput("expected a number or \"inf\"/\"-inf\"/\"nan\"");
}

ordered_json body_to_json(const ConvexBody& body) {
  ordered_json j;
  if (const auto* b = body.get_if<Ball>()) {
    j["type"] = "ball";
    j["center"] = vector_to_json(b->center);
    j["radius"] = b->radius;
  } else if (const auto* e = body.get_if<Ellipsoid>()) {
    j["type"] = "ellipsoid";
    j["center"] = vector_to_json(e->center);
    j["shape"] = matrix_to_json(e->shape);
  } else if (const auto* hp = body.get_if<HPolytope>()) {
    j["type"] = "hpolytope";
    j["normals"] = matrix_to_json(hp->normals);
    j["offsets"] = vector_to_json(hp->offsets);
  } else if (const auto* vp = body.get_if<VPolytope>()) {
    j["type"] = "vpolytope";
    j["vertices"] = matrix_to_json(vp->vertices);
  } else if (const auto* s = body.get_if<SupportBody2D>()) {
    j["type"] = "support2d";
    j["h"] = vector_to_json(s->h());
  } else {
    throw Unsupported("derived body views (" + body.kind() + ") do not serialize");
  }
  return j;
}

ConvexBody body_from_json(const ordered_json& j, Center center) {
  if (!j.is_object()) throw InvalidInput("body document must be a JSON object");
  const ordered_json& type = field(j, "type");
  if (!type.is_string()) throw InvalidInput("\"type\" must be a string");
  const std::string kind = type.get<std::string>();

  if (kind == "ball") {
    Eigen::VectorXd c = vector_from_json(field(j, "center"), "center");
    const ordered_json& r = field(j, "radius");
    if (!r.is_number()) throw InvalidInput("\"radius\" must be a number");
    return make_ball(c, r.get<double>());
  }
  if (kind == "ellipsoid") {
    Eigen::VectorXd c = vector_from_json(field(j, "center"), "center");
    Eigen::MatrixXd shape = matrix_from_json(field(j, "shape"), "shape");
    return make_ellipsoid(c, shape);
  }
  if (kind == "hpolytope") {
    Eigen::MatrixXd normals = matrix_from_json(field(j, "normals"), "normals");
    Eigen::VectorXd offsets = vector_from_json(field(j, "offsets"), "offsets");
    return make_hpolytope(normals, offsets, center);
  }
  if (kind == "vpolytope") {
    Eigen::MatrixXd vertices = matrix_from_json(field(j, "vertices"), "vertices");
    return make_vpolytope(vertices, center);
  }
  if (kind == "support2d") {
    Eigen::VectorXd h = vector_from_json(field(j, "h"), "h");
    return make_support_body(SupportBody2D::from_samples(h), center);
  }
  throw InvalidInput("unknown body type \"" + kind + "\"");
}

ConvexBody body_from_file(const std::string& path, Center center) {
  return body_from_json(load_json(path), center);
}

ordered_json asp_to_json(const std::string& body_id, const AspValue& value) {
  ordered_json j;
  j["body_id"] = body_id;
  j["p"] = double_to_json(value.p);
  j["value"] = double_to_json(value.value);
  j["infinite"] = value.infinite;
  j["method"] = value.method;
  j["error_estimate"] = value.error_estimate;
  j["seed"] = value.seed;
  return j;
}

ordered_json bound_report_to_json(const BoundReport& report) {
  ordered_json j;
  j["quantity"] = report.quantity;
  j["lower"] = double_to_json(report.lower);
  j["value"] = double_to_json(report.value);
  j["upper"] = double_to_json(report.upper);
  j["tolerance"] = report.tolerance;
  j["pass"] = report.pass;
  j["provenance"] = report.provenance;
  return j;
}

ordered_json estimate_to_json(const ExtremalEstimate& estimate) {
  ordered_json j;
  j["kind"] = kind_name(estimate.kind);
  j["p"] = double_to_json(estimate.p);
  j["body_id"] = estimate.body_id;
  j["value"] = double_to_json(estimate.value);
  j["infinite"] = estimate.infinite;
  j["witness"] = estimate.witness ? body_to_json(*estimate.witness) : ordered_json(nullptr);
  ordered_json log = ordered_json::array();
  for (const CandidateValue& c : estimate.candidate_log) {
    ordered_json row;
    row["descriptor"] = c.descriptor;
    row["value"] = double_to_json(c.value);
    log.push_back(row);
  }
  j["candidates"] = log;
  j["bound"] = bound_report_to_json(estimate.bound_status);
  return j;
}

std::string candidates_to_csv(const ExtremalEstimate& estimate) {
  std::ostringstream out;
  out << "index,descriptor,value\n";
  out.precision(17);
  for (std::size_t i = 0; i < estimate.candidate_log.size(); ++i)
    out << i << ',' << estimate.candidate_log[i].descriptor << ','
        << estimate.candidate_log[i].value << '\n';
  return out.str();
}

ordered_json ellipsoid_fit_to_json(const EllipsoidFit& fit) {
  ordered_json j;
  j["kind"] = fit.kind;
  j["center"] = vector_to_json(fit.ellipsoid.center);
  j["shape"] = matrix_to_json(fit.ellipsoid.shape);
  j["containment_ratio"] = fit.containment_ratio;
  j["gap"] = fit.gap;
  j["iterations"] = fit.iterations;
  return j;
}

ordered_json isotropic_to_json(const IsotropicCertificate& cert) {
  ordered_json j;
  j["linear"] = matrix_to_json(cert.map.linear);
  j["shift"] = vector_to_json(cert.map.shift);
  j["L"] = cert.L;
  j["covariance_residual"] = cert.covariance_residual;
  j["volume_residual"] = cert.volume_residual;
  j["method"] = cert.method;
  j["samples"] = cert.samples;
  j["seed"] = cert.seed;
  return j;
}

ordered_json steiner_to_json(const SteinerFit& fit) {
  ordered_json j;
  j["body_id"] = fit.body_id;
  j["t_grid"] = fit.t_grid;
  j["volumes"] = fit.volumes;
  j["volume_errors"] = fit.volume_errors;
  j["W"] = fit.W;
  j["residual"] = fit.residual;
  j["method"] = fit.method;
  return j;
}

std::string steiner_to_csv(const SteinerFit& fit) {
  std::ostringstream out;
  out << "body";
  for (std::size_t i = 0; i < fit.W.size(); ++i) out << ",W_" << i;
  out << ",residual\n" << fit.body_id;
  out.precision(17);
  for (double w : fit.W) out << ',' << w;
  out << ',' << fit.residual << '\n';
  return out.str();
}

ordered_json shell_partition_to_json(const ShellPartition& partition) {
  ordered_json j;
  j["c_thin"] = partition.c_thin;
  j["L"] = partition.L;
  j["ell"] = partition.ell;
  j["k_n"] = partition.k_n;
  ordered_json shells = ordered_json::array();
  for (const Shell& s : partition.shells) {
    ordered_json row;
    row["index"] = s.index;
    row["inner"] = s.inner;
    row["outer"] = s.outer;
    row["mass"] = s.mass;
    shells.push_back(row);
  }
  j["shells"] = shells;
  j["chosen_index"] = partition.chosen_index;
  j["R"] = partition.R;
  j["thin_shell_mass"] = partition.thin_shell_mass;
  j["shell_mass_lower"] = partition.shell_mass_lower;
  j["chosen_points"] = partition.chosen_points.rows();
  j["samples"] = partition.samples;
  j["seed"] = partition.seed;
  return j;
}

std::string shells_to_csv(const ShellPartition& partition) {
  std::ostringstream out;
  out << "index,inner,outer,mass\n";
  out.precision(17);
  for (const Shell& s : partition.shells)
    out << s.index << ',' << s.inner << ',' << s.outer << ',' << s.mass << '\n';
  return out.str();
}

ordered_json so_set_to_json(const SOSet& so) {
  ordered_json j;
  j["R"] = so.R;
  j["sigma_O"] = so.sigma_O;
  j["sigma_std_error"] = so.sigma_std_error;
  j["S_O_volume"] = so.S_O_volume;
  j["directions"] = so.directions;
  return j;
}

ordered_json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  return j;
}

void save_json(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

}  // namespace affsurf
