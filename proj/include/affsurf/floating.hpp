#pragma once

#include <vector>

#include "affsurf/asp.hpp"
#include "affsurf/geometry.hpp"

namespace affsurf {

// K_delta: the intersection of all half-planes that cut a cap of area
// delta*|K| off the parent. Built on a direction grid, so `result` is a
// polygon inscribed between the true K_delta and its circumscribed cuts.
struct FloatingBody {
  ConvexBody parent;
  double delta = 0.0;
  ConvexBody result;
};

FloatingBody floating_body_2d(const ConvexBody& body, double delta, int directions = 720);

// Batch version sharing the per-direction cap geometry across all delta
// values; deltas must be strictly decreasing.
std::vector<FloatingBody> floating_bodies_2d(const ConvexBody& body,
                                             const std::vector<double>& deltas,
                                             int directions = 720);

// Limit oracle for the p = 1 surface integral:
//   d(delta) = 2 (2/3)^{2/3} (|K| - |K_delta|) / (delta |K|)^{2/3}
// extrapolated to delta -> 0 by a Neville table in x = delta^{2/3}.
AspValue asp1_floating_limit_2d(const ConvexBody& body, const std::vector<double>& deltas,
                                int directions = 2880);

// Geometric ladder 0.02 * 2^{-k}, k = 0..6, used by the CLI and tests.
std::vector<double> default_floating_deltas();

}  // namespace affsurf
