#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "affsurf/extremal.hpp"
#include "affsurf/geometry.hpp"

namespace affsurf {

// Steiner expansion |K + t B| = sum_k binom(n,k) W_k t^k recovered from
// parallel-body volumes on a t-grid. The coefficients W_0..W_n are the
// quermassintegrals; W_0 = |K| and W_n = |B^n_2|.
struct SteinerFit {
  std::string body_id;
  std::vector<double> t_grid;
  std::vector<double> volumes;
  std::vector<double> volume_errors;  // Monte Carlo standard errors, 0 when exact
  std::vector<double> W;
  double residual = 0.0;  // worst |polynomial - volume| over the grid
  std::string method;     // "exact" or "monte_carlo"
};

// Computes |K + tB| on the grid and solves the column-scaled Vandermonde
// least-squares system for W. Parallel volumes are exact in the plane
// (area + perimeter t + pi t^2) and for 3-D boxes and balls; other 3-D
// bodies are measured by Monte Carlo hit counting against the Euclidean
// distance to the body. An empty grid selects {0.1, 0.2, ..., (n+1)/10}.
// Throws IllConditionedGrid when fewer than n+1 distinct positive values
// are supplied.
SteinerFit steiner_fit(const ConvexBody& body, std::vector<double> t_grid = {},
                       long samples = 200000, std::uint64_t seed = 0x5eedULL);

// Scaling degree of an extremal functional, fitted by log-log regression
// over scaled copies alpha K.
struct HomogeneityFit {
  ExtremalKind kind = ExtremalKind::kInnerMax;
  double p = 1.0;
  double degree = 0.0;    // fitted slope
  double expected = 0.0;  // n(n-p)/(n+p)
  double residual = 0.0;  // worst log-space deviation from the fitted line
};

// Requires at least three positive scale factors. The candidate families of
// the underlying estimators transform equivariantly, so the fitted slope
// reproduces n(n-p)/(n+p) up to solver tolerances.
HomogeneityFit homogeneity_degree(const ConvexBody& body, ExtremalKind kind, double p,
                                  const std::vector<double>& alphas,
                                  const ExtremalConfig& config = {});

// Numerical companion to the fact that the extremal affine surface areas
// are not quermassintegrals: every W_i scales with an integer degree n - i,
// while the inner supremum at p = 1 scales with degree n(n-1)/(n+1), which
// is not an integer for 2 <= n <= 6; accordingly no degree-n polynomial in
// alpha reproduces alpha^{n(n-1)/(n+1)} on [1/2, 2].
struct NonQuermassReport {
  int n = 0;
  double degree = 0.0;        // n(n-1)/(n+1)
  bool integer_degree = false;
  double fit_residual = 0.0;  // best polynomial fit error, relative scale
  bool non_quermass = false;  // non-integer degree and residual above 1e-6
};

std::vector<NonQuermassReport> non_quermass_report(const std::vector<int>& n_list);

}  // namespace affsurf
