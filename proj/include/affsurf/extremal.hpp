#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affsurf/asp.hpp"
#include "affsurf/geometry.hpp"

namespace affsurf {

// Which extremal functional is being estimated: the supremum of as_p over
// inscribed bodies (IS), over enclosing bodies (OS), the infimum over
// enclosing bodies (os) or over inscribed bodies (is).
enum class ExtremalKind { kInnerMax, kOuterMax, kOuterMin, kInnerMin };

std::string kind_name(ExtremalKind kind);  // "IS", "OS", "os", "is"

// Two-sided enclosure of a computed quantity. pass holds exactly when
// lower - tolerance <= value <= upper + tolerance; provenance names the
// constructions that produced each side.
struct BoundReport {
  std::string quantity;
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string provenance;
};

// One evaluated candidate: a human-readable descriptor and its as_p value.
struct CandidateValue {
  std::string descriptor;
  double value = 0.0;
};

// Outcome of an extremal search or closed-form evaluation. `value` is the
// best candidate value (a one-sided bound on the true extremal quantity) or
// the degenerate-range flag; `infinite` marks flagged +inf. `witness` is the
// best candidate body when one is representable; searches guarantee
// witness subset body for kInnerMax and body subset witness for the outer
// kinds, and value = as_p(witness). Range probes report the limit instead,
// with the witness sequence in candidate_log.
struct ExtremalEstimate {
  ExtremalKind kind = ExtremalKind::kInnerMax;
  double p = 1.0;
  std::string body_id;
  double value = 0.0;
  bool infinite = false;
  std::optional<ConvexBody> witness;
  std::vector<CandidateValue> candidate_log;
  BoundReport bound_status;
};

struct ExtremalConfig {
  int r_grid = 32;         // log-spaced radii for the intersection/hull sweeps
  int lambda_grid = 8;     // dilation factors applied to the fitted ellipsoids
  int angle_grid = 4096;   // containment / symmetry checks on direction grids
  std::vector<double> floating_deltas = {0.04, 0.02, 0.01};
  int polish_iterations = 400;  // simplex steps for the enclosing-ellipse polish
  double tolerance = 1e-7;      // slack allowed in the bound reports
  int probe_witnesses = 7;      // sequence length produced by range_probe
};

// Exact values for the degenerate p-ranges: IS_0 = os_0 = n|K|,
// IS_n = OS_n = n|B^n_2|, is_p = 0 for every p, and the flagged values
// IS_p = +inf (p > n, -n < p < 0, p < -n), OS_p = +inf (p < n, p != -n),
// os_p = 0 (p > 0 or p < -n). Returns nullopt where the value genuinely
// depends on the body (the search ranges) and at p = -n, where as_p itself
// is undefined.
std::optional<ExtremalEstimate> closed_form_extremal(const ConvexBody& body, ExtremalKind kind,
                                                     double p);

// Maximize as_p over bodies inscribed in a centered planar body, 0 < p < n.
// Candidates: dilates of the inscribed ellipsoid of maximal volume, the
// intersections K cap R*B over a radius grid, and smoothed floating bodies.
// The result is a certified lower bound on the inner supremum; the report
// sandwiches it between the inscribed-ellipsoid value and the isoperimetric
// ball bound n |B|^{2p/(n+p)} |K|^{(n-p)/(n+p)}.
ExtremalEstimate estimate_IS(const ConvexBody& body, double p, const ExtremalConfig& config = {});

// Minimize as_p over enclosing bodies of a centered planar body, -n < p < 0.
// Polytopes are excluded (as_p = +inf on this range), so the family consists
// of the minimum-volume enclosing ellipsoid, its dilates, and a local shape
// polish over enclosing ellipses. The report checks the ball sandwich
// n |B|^{2p/(n+p)} |K|^{(n-p)/(n+p)} <= value <= n^{n(n-p)/(n+p)} * same,
// with the exponent of the n-power halved for origin-symmetric bodies.
ExtremalEstimate estimate_os(const ConvexBody& body, double p, const ExtremalConfig& config = {});

// Maximize as_p over enclosing bodies of a centered planar body, n < p <= inf
// (pass std::numeric_limits<double>::infinity() for p = inf). Candidates:
// the minimum-volume enclosing ellipsoid and dilates, enclosing balls, the
// hulls conv(K union R*B) over a radius grid, and the ellipse polish. The
// report checks n^{n(n-p)/(n+p)} * ball bound <= value <= ball bound.
ExtremalEstimate estimate_OS(const ConvexBody& body, double p, const ExtremalConfig& config = {});

// Witness sequence demonstrating the flagged limit on a divergent range:
// shrinking inscribed balls, growing enclosing balls, inscribed or enclosing
// polygons, and corner-rounded enclosing boxes with exact planar as_p
// (outer sup below -n). value carries the limit flag; candidate_log holds
// the sequence, which moves monotonically toward the flag. Throws
// NotDivergentRange when (kind, p) has a finite extremal value.
ExtremalEstimate range_probe(const ConvexBody& body, ExtremalKind kind, double p,
                             const ExtremalConfig& config = {});

// Normalized monotone maps evaluated on estimator output over a p-grid
// inside the relevant range: p -> (IS_p/(n|K|))^{(n+p)/p} must not decrease,
// p -> (OS_p/(n|K*|))^{n+p} and p -> (os_p/(n|K*|))^{n+p} must not increase
// (K* the polar body; the outer maps use the exponent n+p, which is the
// scale-invariant form and is constant exactly on ellipsoids). One report
// per consecutive grid pair; because estimates are one-sided bounds, a
// reversal within the tolerance is reported with pass = true and noted in
// the provenance.
std::vector<BoundReport> verify_monotonicity(const ConvexBody& body, ExtremalKind kind,
                                             const std::vector<double>& p_grid,
                                             const ExtremalConfig& config = {});

// Re-run the estimator on (1 +- eps/rho)-scaled copies (rho the inradius, so
// eps is a Hausdorff-distance budget) and check the observed ratios against
// the scaling envelope (1 + eps/rho)^{n|n-p|/(n+p)} that exact equivariance
// of the candidate families implies.
BoundReport perturbation_smoke(const ConvexBody& body, ExtremalKind kind, double p, double eps,
                               const ExtremalConfig& config = {});

}  // namespace affsurf
