#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "affsurf/support_body.hpp"

namespace affsurf {

class ConvexBody;

// Invertible affine map x -> linear x + shift.
struct AffineMap {
  Eigen::MatrixXd linear;
  Eigen::VectorXd shift;

  static AffineMap identity(int n);
  static AffineMap scaling(int n, double s);
  static AffineMap linear_only(const Eigen::MatrixXd& T);

  int dim() const { return static_cast<int>(linear.rows()); }
  double abs_det() const;
  AffineMap inverse() const;  // throws SingularMap
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const { return linear * x + shift; }
  AffineMap compose(const AffineMap& inner) const;  // this after inner
};

// ---------------------------------------------------------------------------
// Body representations.

// Intersection of half-spaces <a_i, x> <= b_i with unit normals a_i. The
// origin is required to be strictly interior, so b_i > 0. Vertices are
// enumerated at construction for n <= 3; axis-aligned boxes are detected in
// every dimension and keep exact moments.
struct HPolytope {
  Eigen::MatrixXd normals;
  Eigen::VectorXd offsets;
  Eigen::MatrixXd vertices;  // rows; empty when n >= 4 and not a box
  bool is_box = false;
  Eigen::VectorXd box_lo, box_hi;
};

// Convex hull of points (rows). In the plane the rows are stored in
// counterclockwise hull order; facet form is attached for n <= 3.
struct VPolytope {
  Eigen::MatrixXd vertices;
  Eigen::MatrixXd normals;
  Eigen::VectorXd offsets;
};

// { x : (x - center)' shape (x - center) <= 1 } with symmetric positive
// definite shape matrix.
struct Ellipsoid {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;
};

struct Ball {
  Eigen::VectorXd center;
  double radius = 1.0;
};

// K intersected with radius*B (ball centered at the origin).
struct BallIntersection {
  std::shared_ptr<const ConvexBody> base;
  double radius = 1.0;
};

// Convex hull of K and radius*B (ball centered at the origin).
struct BallHull {
  std::shared_ptr<const ConvexBody> base;
  double radius = 1.0;
};

class ConvexBody {
 public:
  using Rep = std::variant<Ball, Ellipsoid, HPolytope, VPolytope, SupportBody2D,
                           BallIntersection, BallHull>;

  ConvexBody(Rep rep, int dim) : rep_(std::move(rep)), dim_(dim) {}

  int dim() const { return dim_; }
  const Rep& rep() const { return rep_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&rep_);
  }
  // Name of the active representation ("ball", "ellipsoid", ...).
  std::string kind() const;

 private:
  Rep rep_;
  int dim_;
};

// Whether constructors translate the body so its centroid sits at the origin
// (the position every affine surface area integral is taken in).
enum class Center { kCentroid, kKeep };

ConvexBody make_ball(const Eigen::VectorXd& center, double radius);
ConvexBody make_ball(int n, double radius);
ConvexBody make_ellipsoid(const Eigen::VectorXd& center, const Eigen::MatrixXd& shape);
ConvexBody make_hpolytope(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets,
                          Center center = Center::kCentroid);
ConvexBody make_vpolytope(const Eigen::MatrixXd& vertices, Center center = Center::kCentroid);
ConvexBody make_support_body(SupportBody2D body, Center center = Center::kCentroid);
ConvexBody make_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                    Center center = Center::kCentroid);
ConvexBody make_cube(int n, double half_width = 1.0);
// Cross-polytope conv{ +-e_i }, stored in facet form (2^n facets).
ConvexBody make_cross_polytope(int n);
ConvexBody make_regular_polygon(int k, double circumradius = 1.0);

// ---------------------------------------------------------------------------
// Queries.

double support(const ConvexBody& body, const Eigen::VectorXd& u);
// Distance from the origin to the boundary along direction u; requires the
// origin strictly interior.
double radial(const ConvexBody& body, const Eigen::VectorXd& u);
bool contains(const ConvexBody& body, const Eigen::VectorXd& x, double tol = 1e-9);
// Parameter interval {t : x + t dir in K}; requires x interior.
std::pair<double, double> chord(const ConvexBody& body, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& dir);

double inradius_origin(const ConvexBody& body);
double circumradius_origin(const ConvexBody& body);
std::pair<Eigen::VectorXd, Eigen::VectorXd> bounding_box(const ConvexBody& body);

// Polar body { y : <x,y> <= 1 for all x in K }; requires origin interior.
ConvexBody polar(const ConvexBody& body);

struct Moments {
  double volume = 0.0;
  Eigen::VectorXd centroid;
  Eigen::MatrixXd second_moment;  // integral of x x' over the body
  std::string method;             // "exact" or "direction_mc"
  double volume_std_error = 0.0;
};

// Volume, centroid and second moment. Exact for balls, ellipsoids, boxes,
// planar bodies and 3-D polytopes; general H-polytopes in dimension >= 4
// fall back to Monte Carlo over random directions with the exact radial
// function.
Moments moments(const ConvexBody& body, long samples = 200000,
                std::uint64_t seed = 0x5eedULL);
double volume(const ConvexBody& body);
Eigen::VectorXd centroid(const ConvexBody& body);

ConvexBody apply_affine(const AffineMap& map, const ConvexBody& body);
ConvexBody translate(const ConvexBody& body, const Eigen::VectorXd& t);

// K intersected with R*B; collapses to the ball (R <= inradius) or a copy of
// K (R >= circumradius) when the intersection is trivial.
ConvexBody intersect_ball(const ConvexBody& body, double R);
// conv(K union R*B); collapses to K (R <= min support) or R*B
// (R >= circumradius).
ConvexBody convex_hull_with_ball(const ConvexBody& body, double R);

// Uniform-direction Hausdorff proxy: max |h_A - h_B| over a direction grid
// (equal to the Hausdorff distance for convex bodies as the grid refines).
double support_distance(const ConvexBody& a, const ConvexBody& b, int directions = 4096,
                        std::uint64_t seed = 0x5eedULL);

// Convex hull of planar points in counterclockwise order (monotone chain).
Eigen::MatrixXd convex_hull_2d(const Eigen::MatrixXd& points);
double polygon_area(const Eigen::MatrixXd& ccw_vertices);

// Counterclockwise polygon on the boundary of a 2-D body: exact vertices for
// polytopes, radial boundary samples at m angles otherwise.
Eigen::MatrixXd boundary_polygon(const ConvexBody& body, int m = 4096);

// Support-body view of a planar ellipsoid (analytic h, h', h'').
SupportBody2D ellipsoid_support_body(const Ellipsoid& e, int m = SupportBody2D::kDefaultGrid);

}  // namespace affsurf
