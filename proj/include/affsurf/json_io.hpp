#pragma once

#include <json.hpp>
#include <string>

#include "affsurf/asp.hpp"
#include "affsurf/ellipsoid_fit.hpp"
#include "affsurf/extremal.hpp"
#include "affsurf/floating.hpp"
#include "affsurf/geometry.hpp"
#include "affsurf/quermass.hpp"
#include "affsurf/sampling.hpp"

namespace affsurf {

using ordered_json = nlohmann::ordered_json;

// Bodies serialize as {"type": ..., fields}. Supported types: ball
// (center, radius), ellipsoid (center, shape), hpolytope (normals, offsets),
// vpolytope (vertices), support2d (h samples on the uniform angle grid).
// Derived representations (ball intersections and hulls) are views and do
// not serialize. Loading runs the ordinary constructors, so every stored
// invariant (unit normals, positive offsets, convexity of h) is re-checked;
// by default the stored coordinates are kept rather than re-centered.
ordered_json body_to_json(const ConvexBody& body);
ConvexBody body_from_json(const ordered_json& j, Center center = Center::kKeep);
ConvexBody body_from_file(const std::string& path, Center center = Center::kKeep);

// Non-finite numbers are stored as the strings "inf", "-inf", "nan" so the
// documents stay valid JSON; json_to_double reverses the encoding.
ordered_json double_to_json(double x);
double json_to_double(const ordered_json& j);

// {body_id, p, value, infinite, method, error_estimate, seed}
ordered_json asp_to_json(const std::string& body_id, const AspValue& value);

ordered_json bound_report_to_json(const BoundReport& report);
// Full estimate: kind, p, value, witness (body document or null), the
// candidate log, and the bound report.
ordered_json estimate_to_json(const ExtremalEstimate& estimate);
// One row per evaluated candidate: index,descriptor,value
std::string candidates_to_csv(const ExtremalEstimate& estimate);

ordered_json ellipsoid_fit_to_json(const EllipsoidFit& fit);
ordered_json isotropic_to_json(const IsotropicCertificate& cert);

ordered_json steiner_to_json(const SteinerFit& fit);
// Single row: body,W_0,...,W_n,residual (with a matching header line).
std::string steiner_to_csv(const SteinerFit& fit);

ordered_json shell_partition_to_json(const ShellPartition& partition);
// One row per shell: index,inner,outer,mass
std::string shells_to_csv(const ShellPartition& partition);
ordered_json so_set_to_json(const SOSet& so);

ordered_json load_json(const std::string& path);
void save_json(const std::string& path, const ordered_json& j);

}  // namespace affsurf
