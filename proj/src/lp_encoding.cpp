#include "lp_encoding.hpp"

#include <limits>

namespace enlarge::detail {

namespace {

using Row = LpBuilder::Row;

std::vector<int> fresh(LpBuilder& lp, int n) { return lp.add_vars(n, false); }

// u - sum_k coef_k * w_k = 0 for each coordinate, with w given as columns of m.
void tie_combination(LpBuilder& lp, const std::vector<int>& u, const Mat& m,
                     const std::vector<int>& weights, const std::vector<int>& neg_weights = {}) {
  for (int i = 0; i < static_cast<int>(u.size()); ++i) {
    Row row{{u[i], 1.0}};
    for (int k = 0; k < m.cols(); ++k) {
      if (m(i, k) == 0.0) continue;
      row.emplace_back(weights[k], -m(i, k));
      if (!neg_weights.empty()) row.emplace_back(neg_weights[k], m(i, k));
    }
    lp.add_eq(std::move(row), 0.0);
  }
}

// u = sum (p_k - q_k) w_k with sum (p_k + q_k) <= t: u in t conv(+-w_k).
void encode_hull(LpBuilder& lp, const Mat& w, const std::vector<int>& u, int t) {
  const int m = static_cast<int>(w.cols());
  auto p = lp.add_vars(m, true);
  auto q = lp.add_vars(m, true);
  tie_combination(lp, u, w, p, q);
  Row budget{{t, -1.0}};
  for (int k = 0; k < m; ++k) {
    budget.emplace_back(p[k], 1.0);
    budget.emplace_back(q[k], 1.0);
  }
  lp.add_le(std::move(budget), 0.0);
}

// |<a_k, u>| <= b_k t for rows a_k.
void encode_slab_rows(LpBuilder& lp, const Mat& normals, const Vec& offsets,
                      const std::vector<int>& u, int t) {
  for (int k = 0; k < normals.rows(); ++k) {
    Row pos{{t, -offsets(k)}}, neg{{t, -offsets(k)}};
    for (int i = 0; i < normals.cols(); ++i) {
      if (normals(k, i) == 0.0) continue;
      pos.emplace_back(u[i], normals(k, i));
      neg.emplace_back(u[i], -normals(k, i));
    }
    lp.add_le(std::move(pos), 0.0);
    lp.add_le(std::move(neg), 0.0);
  }
}

int scaled_bound(LpBuilder& lp, int t, double factor) {
  // t' = factor * t
  const int t2 = lp.add_var(true);
  lp.add_eq({{t2, 1.0}, {t, -factor}}, 0.0);
  return t2;
}

}  // namespace

void encode_membership(LpBuilder& lp, const Body& body, const std::vector<int>& u, int t) {
  const auto& v = body.node().value;
  if (auto h = std::get_if<HPolytope>(&v)) {
    encode_slab_rows(lp, h->normals, h->offsets, u, t);
  } else if (auto vp = std::get_if<VPolytope>(&v)) {
    encode_hull(lp, vp->vertices, u, t);
  } else if (auto z = std::get_if<Zonotope>(&v)) {
    const int k = static_cast<int>(z->generators.cols());
    auto c = fresh(lp, k);
    for (int j = 0; j < k; ++j) {
      lp.add_le({{c[j], 1.0}, {t, -1.0}}, 0.0);
      lp.add_le({{c[j], -1.0}, {t, -1.0}}, 0.0);
    }
    tie_combination(lp, u, z->generators, c);
  } else if (std::holds_alternative<EuclideanBall>(v)) {
    throw UnsupportedRepresentation("Euclidean ball is not LP-representable");
  } else if (auto p = std::get_if<Polar>(&v)) {
    encode_support_le(lp, p->inner, u, t);
  } else if (auto s = std::get_if<Scaled>(&v)) {
    encode_membership(lp, s->inner, u, scaled_bound(lp, t, s->factor));
  } else if (auto sum = std::get_if<MinkowskiSum>(&v)) {
    const int n = body.dim();
    auto u1 = fresh(lp, n), u2 = fresh(lp, n);
    for (int i = 0; i < n; ++i) lp.add_eq({{u[i], 1.0}, {u1[i], -1.0}, {u2[i], -1.0}}, 0.0);
    encode_membership(lp, sum->left, u1, t);
    encode_membership(lp, sum->right, u2, t);
  } else if (auto in = std::get_if<IntersectionPair>(&v)) {
    encode_membership(lp, in->left, u, t);
    encode_membership(lp, in->right, u, t);
  }
}

void encode_support_le(LpBuilder& lp, const Body& body, const std::vector<int>& u, int t) {
  const auto& v = body.node().value;
  if (auto h = std::get_if<HPolytope>(&v)) {
    Mat w = h->normals.transpose();
    for (int k = 0; k < w.cols(); ++k) w.col(k) /= h->offsets(k);
    encode_hull(lp, w, u, t);
  } else if (auto vp = std::get_if<VPolytope>(&v)) {
    encode_slab_rows(lp, vp->vertices.transpose(), Vec::Ones(vp->vertices.cols()), u, t);
  } else if (auto z = std::get_if<Zonotope>(&v)) {
    const Mat& y = z->generators;
    auto s = lp.add_vars(static_cast<int>(y.cols()), true);
    Row budget{{t, -1.0}};
    for (int j = 0; j < y.cols(); ++j) {
      Row pos{{s[j], -1.0}}, neg{{s[j], -1.0}};
      for (int i = 0; i < y.rows(); ++i) {
        if (y(i, j) == 0.0) continue;
        pos.emplace_back(u[i], y(i, j));
        neg.emplace_back(u[i], -y(i, j));
      }
      lp.add_le(std::move(pos), 0.0);
      lp.add_le(std::move(neg), 0.0);
      budget.emplace_back(s[j], 1.0);
    }
    lp.add_le(std::move(budget), 0.0);
  } else if (std::holds_alternative<EuclideanBall>(v)) {
    throw UnsupportedRepresentation("Euclidean ball is not LP-representable");
  } else if (auto p = std::get_if<Polar>(&v)) {
    encode_membership(lp, p->inner, u, t);
  } else if (auto s = std::get_if<Scaled>(&v)) {
    encode_support_le(lp, s->inner, u, scaled_bound(lp, t, 1.0 / s->factor));
  } else if (auto sum = std::get_if<MinkowskiSum>(&v)) {
    const int s1 = lp.add_var(true), s2 = lp.add_var(true);
    lp.add_le({{s1, 1.0}, {s2, 1.0}, {t, -1.0}}, 0.0);
    encode_support_le(lp, sum->left, u, s1);
    encode_support_le(lp, sum->right, u, s2);
  } else if (auto in = std::get_if<IntersectionPair>(&v)) {
    // h_{A cap B}(u) = min over u1 + u2 = u of h_A(u1) + h_B(u2).
    const int n = body.dim();
    auto u1 = fresh(lp, n), u2 = fresh(lp, n);
    for (int i = 0; i < n; ++i) lp.add_eq({{u[i], 1.0}, {u1[i], -1.0}, {u2[i], -1.0}}, 0.0);
    const int s1 = lp.add_var(true), s2 = lp.add_var(true);
    lp.add_le({{s1, 1.0}, {s2, 1.0}, {t, -1.0}}, 0.0);
    encode_support_le(lp, in->left, u1, s1);
    encode_support_le(lp, in->right, u2, s2);
  }
}

double lp_support(const Body& body, const Vec& a, const Tolerances& tol) {
  const int n = body.dim();
  LpBuilder lp;
  auto x = lp.add_vars(n, false);
  const int t = lp.add_var(true);
  lp.add_eq({{t, 1.0}}, 1.0);
  encode_membership(lp, body, x, t);
  Row obj;
  for (int i = 0; i < n; ++i) obj.emplace_back(x[i], -a(i));
  lp.set_objective(std::move(obj));
  const LpOutcome out = solve_lp(lp.build(), tol);
  if (out.status == LpStatus::Unbounded) return std::numeric_limits<double>::infinity();
  if (!out.feasible()) throw std::runtime_error("support LP unexpectedly infeasible");
  return -out.objective;
}

double lp_gauge(const Body& body, const Vec& x, const Tolerances& tol) {
  const int n = body.dim();
  LpBuilder lp;
  auto u = lp.add_vars(n, false);
  for (int i = 0; i < n; ++i) lp.add_eq({{u[i], 1.0}}, x(i));
  const int t = lp.add_var(true);
  encode_membership(lp, body, u, t);
  lp.set_objective({{t, 1.0}});
  const LpOutcome out = solve_lp(lp.build(), tol);
  if (!out.feasible()) return std::numeric_limits<double>::infinity();
  return out.objective;
}

}  // namespace enlarge::detail
