#pragma once

#include "affsurf/geometry.hpp"
#include "affsurf/rng.hpp"

namespace affsurf {

// Random planar test bodies. All generators are deterministic functions of
// the generator state, so a fixed seed reproduces the corpus.

// Convex hull of k uniform points in the unit disk, k drawn from [5, 30].
// Recentered at the centroid.
ConvexBody random_polygon(Rng& rng);

// Hull of +-(k points), k in [3, 15], so the body is origin symmetric.
ConvexBody random_symmetric_polygon(Rng& rng);

// Centered ellipse with unit minor semi-axis, axis ratio log-uniform in
// [1, 10], and a uniformly random rotation.
ConvexBody random_ellipse(Rng& rng);

// Strictly convex smooth body: h = 1 + sum of random harmonics of order
// 2..6 whose amplitudes are rescaled so the curvature radius h + h'' stays
// above 0.35 everywhere. Recentered at the centroid.
ConvexBody random_smooth_body(Rng& rng, int grid = SupportBody2D::kDefaultGrid);

}  // namespace affsurf
