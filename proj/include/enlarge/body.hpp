#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "enlarge/numerics.hpp"

namespace enlarge {

struct BodyNode;

/// A 0-symmetric convex body. Immutable; copies share the representation tree.
///
/// Representations:
///  - H-polytope {x : |<a_k, x>| <= b_k}, normals stored as rows;
///  - V-polytope conv(+-v_m), vertices stored as columns;
///  - zonotope sum_j [-y_j, y_j], generators stored as columns;
///  - Euclidean ball of radius r;
///  - the combinators polar, scaled, Minkowski sum and intersection.
///
/// An H-polytope whose normals do not span is an unbounded slab; it is only
/// meaningful as a factor of an intersection. NormedSpace rejects it as a unit ball.
class Body {
 public:
  static Body hpolytope(Mat normals, Vec offsets);
  static Body vpolytope(Mat vertices);
  static Body zonotope(Mat generators);
  static Body ball(int dim, double radius = 1.0);
  static Body polar_of(Body inner);
  static Body scaled(double factor, Body inner);
  static Body sum(Body left, Body right);
  static Body intersection(Body left, Body right);

  /// Unit balls of l_1^n, l_2^n and l_inf^n.
  static Body l1_ball(int dim);
  static Body l2_ball(int dim) { return ball(dim, 1.0); }
  static Body cube(int dim, double half_width = 1.0);

  int dim() const { return dim_; }
  const BodyNode& node() const { return *node_; }
  std::string kind() const;

 private:
  Body(std::shared_ptr<const BodyNode> node, int dim) : node_(std::move(node)), dim_(dim) {}
  std::shared_ptr<const BodyNode> node_;
  int dim_ = 0;
};

struct HPolytope {
  Mat normals;  // m x n
  Vec offsets;  // m, all > 0
};
struct VPolytope {
  Mat vertices;  // n x M
};
struct Zonotope {
  Mat generators;  // n x K
};
struct EuclideanBall {
  int dim = 0;
  double radius = 1.0;
};
struct Polar {
  Body inner;
};
struct Scaled {
  double factor = 1.0;
  Body inner;
};
struct MinkowskiSum {
  Body left, right;
};
struct IntersectionPair {
  Body left, right;
};

struct BodyNode {
  std::variant<HPolytope, VPolytope, Zonotope, EuclideanBall, Polar, Scaled, MinkowskiSum,
               IntersectionPair>
      value;
};

template <typename T>
const T* as(const Body& body) {
  return std::get_if<T>(&body.node().value);
}

/// A finite-dimensional normed space given by its unit ball.
class NormedSpace {
 public:
  /// Validates that the ball is bounded with 0 in its interior.
  explicit NormedSpace(Body unit_ball);

  static NormedSpace lp(int dim, double p);  // p in {1, 2, inf}

  int dim() const { return unit_ball_.dim(); }
  const Body& unit_ball() const { return unit_ball_; }
  /// B(X*) as a body.
  Body dual_ball() const;
  double norm(const Vec& x, const Tolerances& tol = {}) const;
  double dual_norm(const Vec& f, const Tolerances& tol = {}) const;
  bool is_euclidean() const;

 private:
  Body unit_ball_;
};

// ---------------------------------------------------------------------------
// Queries

/// h(body, a) = max <a, x> over the body. +inf for directions a slab does not bound.
double support(const Body& body, const Vec& a, const Tolerances& tol = {});

/// Minkowski functional inf{t > 0 : x in t body}; 0 at x = 0.
double gauge(const Body& body, const Vec& x, const Tolerances& tol = {});

bool contains_point(const Body& body, const Vec& x, const Tolerances& tol = {});

enum class ContainmentMode { Exact, Sampled };

struct ContainmentResult {
  bool contained = false;
  ContainmentMode mode = ContainmentMode::Exact;
  /// Largest violation found (<= 0 means contained with margin).
  double worst_slack = 0.0;
  /// Offending vertex (exact/vertex route) or direction (facet and sampled routes).
  Vec witness;
  /// Set when an exact route was abandoned for exceeding the vertex budget.
  bool budget_fallback = false;
  std::string route;
};

struct ContainmentOptions {
  /// Cap on vertex/facet candidates examined before falling back to sampling.
  double vertex_budget = 200000;
  bool allow_sampled = true;
};

/// inner subset outer. Exact when inner exposes vertices or outer exposes facets
/// within budget; otherwise support comparison on the direction net (necessary-only).
ContainmentResult contains_body(const Body& inner, const Body& outer, const Tolerances& tol = {},
                                const ContainmentOptions& options = {});

// ---------------------------------------------------------------------------
// Constructors on bodies

Body polar(const Body& body);
Body minkowski_sum(const Body& a, const Body& b);
Body scale(double factor, const Body& body);
/// Image under M. Zonotopes and V-polytopes map for any (also rectangular) M;
/// H-polytopes need square invertible M; balls need orthogonal M.
Body linear_image(const Mat& m, const Body& body, const Tolerances& tol = {});
/// A x B inside R^(n+m).
Body cartesian_product(const Body& a, const Body& b, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Geometry of polyhedral bodies

/// Exact H-representation with rows normalised to offset 1, if the body is polyhedral
/// and the facet enumeration fits the budget.
std::optional<HPolytope> facets(const Body& body, const Tolerances& tol = {},
                                double budget = 200000);

/// Points whose symmetric convex hull is the body (every vertex is included,
/// non-vertices may be). nullopt for non-polyhedral bodies or budget overflow.
std::optional<Mat> vertex_candidates(const Body& body, const Tolerances& tol = {},
                                     double budget = 200000);

/// Vertices of a zonotope: sign sweeps over (n-1)-subsets of generators.
std::optional<Mat> zonotope_vertices(const Mat& generators, const Tolerances& tol = {},
                                     double budget = 200000);

/// Extreme points of a planar symmetric body given by candidate points, in CCW order.
Mat planar_hull(const Mat& points, const Tolerances& tol = {});

/// Volume. Zonotopes in any dimension, parallelepipeds in any dimension, balls,
/// and other polyhedral bodies in dimension <= 3.
double volume(const Body& body, const Tolerances& tol = {});

/// Whether support/gauge can be expressed by linear programming (no balls inside).
bool is_polyhedral(const Body& body);

}  // namespace enlarge
