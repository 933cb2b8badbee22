#include <cmath>
#include <limits>

#include "enlarge/body.hpp"

namespace enlarge {

namespace {

// Ascent for max ||v|| over zonotope vertices: v <- vertex in direction v.
double zonotope_radius_ascent(const Mat& y, Vec a, Vec& argmax) {
  double best = 0;
  for (int it = 0; it < 100; ++it) {
    Vec v = y * (y.transpose() * a).unaryExpr([](double t) { return t >= 0 ? 1.0 : -1.0; });
    const double r = v.norm();
    if (r <= best * (1 + 1e-15)) break;
    best = r;
    argmax = v;
    a = v / r;
  }
  return best;
}

ContainmentResult by_vertices(const Mat& pts, const Body& outer, const Tolerances& tol) {
  ContainmentResult res;
  res.route = "inner-vertices";
  res.worst_slack = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < pts.cols(); ++j) {
    const double slack = gauge(outer, pts.col(j), tol) - 1.0;
    if (slack > res.worst_slack) {
      res.worst_slack = slack;
      res.witness = pts.col(j);
    }
  }
  if (pts.cols() == 0) res.worst_slack = -1.0;
  res.contained = res.worst_slack <= tol.feas;
  return res;
}

ContainmentResult by_facets(const Body& inner, const HPolytope& f, const Tolerances& tol) {
  ContainmentResult res;
  res.route = "outer-facets";
  res.worst_slack = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < f.normals.rows(); ++k) {
    const Vec a = f.normals.row(k).transpose();
    const double slack = support(inner, a, tol) / f.offsets(k) - 1.0;
    if (slack > res.worst_slack) {
      res.worst_slack = slack;
      res.witness = a;
    }
  }
  res.contained = res.worst_slack <= tol.feas;
  return res;
}

ContainmentResult by_net(const Body& inner, const Body& outer, const Tolerances& tol) {
  ContainmentResult res;
  res.route = "direction-net";
  res.mode = ContainmentMode::Sampled;
  res.worst_slack = -std::numeric_limits<double>::infinity();
  const Mat& net = direction_net(inner.dim());
  for (Eigen::Index k = 0; k < net.cols(); ++k) {
    const Vec a = net.col(k);
    const double slack = support(inner, a, tol) - support(outer, a, tol);
    if (slack > res.worst_slack) {
      res.worst_slack = slack;
      res.witness = a;
    }
  }
  // Zonotope inside a ball: refine the best net directions by vertex ascent.
  auto z = as<Zonotope>(inner);
  auto b = as<EuclideanBall>(outer);
  if (z && b) {
    Vec v;
    const double r = zonotope_radius_ascent(z->generators, res.witness, v);
    if (r - b->radius > res.worst_slack) {
      res.worst_slack = r - b->radius;
      res.witness = v / r;
    }
  }
  res.contained = res.worst_slack <= tol.feas;
  return res;
}

}  // namespace

ContainmentResult contains_body(const Body& inner, const Body& outer, const Tolerances& tol,
                                const ContainmentOptions& options) {
  if (inner.dim() != outer.dim()) throw InputError("contains_body: dimension mismatch");
  auto bi = as<EuclideanBall>(inner);
  auto bo = as<EuclideanBall>(outer);
  if (bi && bo) {
    ContainmentResult res;
    res.route = "ball-radii";
    res.worst_slack = bi->radius / bo->radius - 1.0;
    res.contained = res.worst_slack <= tol.feas;
    res.witness = Vec::Unit(inner.dim(), 0);
    return res;
  }

  bool budget_hit = false;
  auto outer_facets = facets(outer, tol, options.vertex_budget);
  if (!outer_facets && is_polyhedral(outer) && !bo) budget_hit = true;
  if (outer_facets) {
    try {
      return by_facets(inner, *outer_facets, tol);
    } catch (const UnsupportedRepresentation&) {
    }
  }
  auto pts = vertex_candidates(inner, tol, options.vertex_budget);
  if (!pts && is_polyhedral(inner)) budget_hit = true;
  if (pts) {
    try {
      return by_vertices(*pts, outer, tol);
    } catch (const UnsupportedRepresentation&) {
    }
  }
  if (!options.allow_sampled)
    throw UnsupportedRepresentation("contains_body: no exact route for " + inner.kind() + " in " + outer.kind());
  ContainmentResult res = by_net(inner, outer, tol);
  res.budget_fallback = budget_hit;
  return res;
}

}  // namespace enlarge
