#include "enlarge/body.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lp_encoding.hpp"

namespace enlarge {

namespace {

void require_finite(const auto& m, const char* what) {
  if (!m.allFinite()) throw InputError(std::string(what) + ": non-finite entries");
}

void require_same_dim(const Body& a, const Body& b, const char* what) {
  if (a.dim() != b.dim())
    throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + ")");
}

void require_dim(const Body& body, const Vec& v, const char* what) {
  if (v.size() != body.dim())
    throw InputError(std::string(what) + ": vector of size " + std::to_string(v.size()) +
                     " for body of dimension " + std::to_string(body.dim()));
}

int rank_of(const Mat& m, double rel = 1e-10) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return r;
}

// Columns spanning the linear hull of the body (identity when full-dimensional).
Mat span_basis(const Body& body);

bool is_bounded(const Body& body) {
  const auto& v = body.node().value;
  const int n = body.dim();
  if (auto h = std::get_if<HPolytope>(&v)) return rank_of(h->normals) == n;
  if (auto p = std::get_if<Polar>(&v)) return rank_of(span_basis(p->inner)) == n;
  if (auto s = std::get_if<Scaled>(&v)) return is_bounded(s->inner);
  if (auto sum = std::get_if<MinkowskiSum>(&v)) return is_bounded(sum->left) && is_bounded(sum->right);
  if (auto in = std::get_if<IntersectionPair>(&v)) {
    if (is_bounded(in->left) || is_bounded(in->right)) return true;
    auto hl = as<HPolytope>(in->left);
    auto hr = as<HPolytope>(in->right);
    if (hl && hr) {
      Mat stacked(hl->normals.rows() + hr->normals.rows(), n);
      stacked << hl->normals, hr->normals;
      return rank_of(stacked) == n;
    }
    return false;
  }
  return true;
}

Mat span_basis(const Body& body) {
  const auto& v = body.node().value;
  const int n = body.dim();
  if (auto vp = std::get_if<VPolytope>(&v)) return vp->vertices;
  if (auto z = std::get_if<Zonotope>(&v)) return z->generators;
  if (auto p = std::get_if<Polar>(&v)) {
    if (is_bounded(p->inner)) return Mat::Identity(n, n);
    if (auto h = as<HPolytope>(p->inner)) return h->normals.transpose();
    return Mat::Zero(n, 0);
  }
  if (auto s = std::get_if<Scaled>(&v)) return span_basis(s->inner);
  if (auto sum = std::get_if<MinkowskiSum>(&v)) {
    Mat l = span_basis(sum->left), r = span_basis(sum->right);
    Mat both(n, l.cols() + r.cols());
    both << l, r;
    return both;
  }
  if (auto in = std::get_if<IntersectionPair>(&v)) {
    Mat l = span_basis(in->left), r = span_basis(in->right);
    return rank_of(l) <= rank_of(r) ? l : r;
  }
  return Mat::Identity(n, n);
}

double intersection_support_by_duality(const Body& other, const HPolytope& slab, const Vec& a,
                                       const Tolerances& tol);

}  // namespace

// ---------------------------------------------------------------------------

Body Body::hpolytope(Mat normals, Vec offsets) {
  require_finite(normals, "hpolytope normals");
  require_finite(offsets, "hpolytope offsets");
  if (normals.rows() != offsets.size()) throw InputError("hpolytope: normals/offsets count mismatch");
  if (normals.rows() == 0) throw InputError("hpolytope: needs at least one normal");
  if ((offsets.array() <= 0).any()) throw InputError("hpolytope: offsets must be positive");
  const int n = static_cast<int>(normals.cols());
  return Body(std::make_shared<BodyNode>(BodyNode{HPolytope{std::move(normals), std::move(offsets)}}), n);
}

Body Body::vpolytope(Mat vertices) {
  require_finite(vertices, "vpolytope vertices");
  if (vertices.cols() == 0) throw InputError("vpolytope: needs at least one vertex");
  const int n = static_cast<int>(vertices.rows());
  return Body(std::make_shared<BodyNode>(BodyNode{VPolytope{std::move(vertices)}}), n);
}

Body Body::zonotope(Mat generators) {
  require_finite(generators, "zonotope generators");
  const int n = static_cast<int>(generators.rows());
  return Body(std::make_shared<BodyNode>(BodyNode{Zonotope{std::move(generators)}}), n);
}

Body Body::ball(int dim, double radius) {
  if (dim < 1) throw InputError("ball: dimension must be >= 1");
  if (!(radius > 0) || !std::isfinite(radius)) throw InputError("ball: radius must be positive");
  return Body(std::make_shared<BodyNode>(BodyNode{EuclideanBall{dim, radius}}), dim);
}

Body Body::polar_of(Body inner) {
  const int n = inner.dim();
  return Body(std::make_shared<BodyNode>(BodyNode{Polar{std::move(inner)}}), n);
}

Body Body::scaled(double factor, Body inner) {
  if (!(factor > 0) || !std::isfinite(factor)) throw InputError("scaled: factor must be positive");
  const int n = inner.dim();
  return Body(std::make_shared<BodyNode>(BodyNode{Scaled{factor, std::move(inner)}}), n);
}

Body Body::sum(Body left, Body right) {
  require_same_dim(left, right, "minkowski sum");
  const int n = left.dim();
  return Body(std::make_shared<BodyNode>(BodyNode{MinkowskiSum{std::move(left), std::move(right)}}), n);
}

Body Body::intersection(Body left, Body right) {
  require_same_dim(left, right, "intersection");
  const int n = left.dim();
  return Body(
      std::make_shared<BodyNode>(BodyNode{IntersectionPair{std::move(left), std::move(right)}}), n);
}

Body Body::l1_ball(int dim) {
  if (dim < 1) throw InputError("l1_ball: dimension must be >= 1");
  return vpolytope(Mat::Identity(dim, dim));
}

Body Body::cube(int dim, double half_width) {
  if (dim < 1) throw InputError("cube: dimension must be >= 1");
  return hpolytope(Mat::Identity(dim, dim), Vec::Constant(dim, half_width));
}

std::string Body::kind() const {
  static const char* names[] = {"hpolytope", "vpolytope", "zonotope", "ball2",
                                "polar",     "scaled",    "sum",      "intersection"};
  return names[node_->value.index()];
}

// ---------------------------------------------------------------------------

NormedSpace::NormedSpace(Body unit_ball) : unit_ball_(std::move(unit_ball)) {
  const int n = unit_ball_.dim();
  if (!is_bounded(unit_ball_)) throw InputError("normed space: unit ball is unbounded");
  if (rank_of(span_basis(unit_ball_)) != n)
    throw InputError("normed space: unit ball has empty interior");
}

NormedSpace NormedSpace::lp(int dim, double p) {
  if (p == 1.0) return NormedSpace(Body::l1_ball(dim));
  if (p == 2.0) return NormedSpace(Body::l2_ball(dim));
  if (std::isinf(p)) return NormedSpace(Body::cube(dim));
  throw InputError("NormedSpace::lp supports p in {1, 2, inf}");
}

Body NormedSpace::dual_ball() const { return polar(unit_ball_); }

double NormedSpace::norm(const Vec& x, const Tolerances& tol) const { return gauge(unit_ball_, x, tol); }

double NormedSpace::dual_norm(const Vec& f, const Tolerances& tol) const {
  return support(unit_ball_, f, tol);
}

bool NormedSpace::is_euclidean() const {
  auto b = as<EuclideanBall>(unit_ball_);
  return b && b->radius == 1.0;
}

bool is_polyhedral(const Body& body) {
  const auto& v = body.node().value;
  if (std::holds_alternative<EuclideanBall>(v)) return false;
  if (auto p = std::get_if<Polar>(&v)) return is_polyhedral(p->inner);
  if (auto s = std::get_if<Scaled>(&v)) return is_polyhedral(s->inner);
  if (auto sum = std::get_if<MinkowskiSum>(&v)) return is_polyhedral(sum->left) && is_polyhedral(sum->right);
  if (auto in = std::get_if<IntersectionPair>(&v)) return is_polyhedral(in->left) && is_polyhedral(in->right);
  return true;
}

// ---------------------------------------------------------------------------

double support(const Body& body, const Vec& a, const Tolerances& tol) {
  require_dim(body, a, "support");
  const auto& v = body.node().value;
  if (auto vp = std::get_if<VPolytope>(&v)) return (vp->vertices.transpose() * a).cwiseAbs().maxCoeff();
  if (auto z = std::get_if<Zonotope>(&v)) return (z->generators.transpose() * a).cwiseAbs().sum();
  if (auto b = std::get_if<EuclideanBall>(&v)) return b->radius * a.norm();
  if (auto p = std::get_if<Polar>(&v)) return gauge(p->inner, a, tol);
  if (auto s = std::get_if<Scaled>(&v)) return s->factor * support(s->inner, a, tol);
  if (auto sum = std::get_if<MinkowskiSum>(&v))
    return support(sum->left, a, tol) + support(sum->right, a, tol);
  if (a.isZero(0.0)) return 0.0;
  if (std::holds_alternative<HPolytope>(v)) return detail::lp_support(body, a, tol);
  const auto& in = std::get<IntersectionPair>(v);
  if (is_polyhedral(body)) return detail::lp_support(body, a, tol);
  if (auto h = as<HPolytope>(in.right); h && h->normals.rows() <= 2)
    return intersection_support_by_duality(in.left, *h, a, tol);
  if (auto h = as<HPolytope>(in.left); h && h->normals.rows() <= 2)
    return intersection_support_by_duality(in.right, *h, a, tol);
  throw UnsupportedRepresentation(
      "support of an intersection needs a polyhedral pair or a factor with at most two slabs");
}

double gauge(const Body& body, const Vec& x, const Tolerances& tol) {
  require_dim(body, x, "gauge");
  if (x.isZero(0.0)) return 0.0;
  const auto& v = body.node().value;
  if (auto h = std::get_if<HPolytope>(&v))
    return ((h->normals * x).array().abs() / h->offsets.array()).maxCoeff();
  if (auto b = std::get_if<EuclideanBall>(&v)) return x.norm() / b->radius;
  if (auto p = std::get_if<Polar>(&v)) return support(p->inner, x, tol);
  if (auto s = std::get_if<Scaled>(&v)) return gauge(s->inner, x, tol) / s->factor;
  if (auto in = std::get_if<IntersectionPair>(&v))
    return std::max(gauge(in->left, x, tol), gauge(in->right, x, tol));
  if (auto vp = std::get_if<VPolytope>(&v); vp && vp->vertices.cols() == 1) {
    // Segment: x must be parallel to the vertex.
    const Vec& w = vp->vertices.col(0);
    const double c = w.dot(x) / w.squaredNorm();
    if ((x - c * w).norm() > tol.eq * std::max(1.0, x.norm())) return std::numeric_limits<double>::infinity();
    return std::abs(c);
  }
  if (!is_polyhedral(body))
    throw UnsupportedRepresentation("gauge of a Minkowski sum involving a Euclidean ball");
  return detail::lp_gauge(body, x, tol);
}

bool contains_point(const Body& body, const Vec& x, const Tolerances& tol) {
  return gauge(body, x, tol) <= 1.0 + tol.feas;
}

// ---------------------------------------------------------------------------

Body polar(const Body& body) {
  if (auto p = as<Polar>(body)) return p->inner;
  return Body::polar_of(body);
}

Body minkowski_sum(const Body& a, const Body& b) {
  auto za = as<Zonotope>(a);
  auto zb = as<Zonotope>(b);
  if (za && zb) {
    require_same_dim(a, b, "minkowski sum");
    Mat g(a.dim(), za->generators.cols() + zb->generators.cols());
    g << za->generators, zb->generators;
    return Body::zonotope(std::move(g));
  }
  return Body::sum(a, b);
}

Body scale(double factor, const Body& body) {
  if (!(factor > 0)) throw InputError("scale: factor must be positive");
  if (auto s = as<Scaled>(body)) return Body::scaled(factor * s->factor, s->inner);
  if (auto z = as<Zonotope>(body)) return Body::zonotope(factor * z->generators);
  if (auto v = as<VPolytope>(body)) return Body::vpolytope(factor * v->vertices);
  if (auto h = as<HPolytope>(body)) return Body::hpolytope(h->normals, factor * h->offsets);
  if (auto b = as<EuclideanBall>(body)) return Body::ball(b->dim, factor * b->radius);
  return Body::scaled(factor, body);
}

Body linear_image(const Mat& m, const Body& body, const Tolerances& tol) {
  if (m.cols() != body.dim()) throw InputError("linear_image: matrix columns != body dimension");
  require_finite(m, "linear_image");
  const auto& v = body.node().value;
  if (auto z = std::get_if<Zonotope>(&v)) return Body::zonotope(m * z->generators);
  if (auto vp = std::get_if<VPolytope>(&v)) return Body::vpolytope(m * vp->vertices);
  if (auto s = std::get_if<Scaled>(&v)) return Body::scaled(s->factor, linear_image(m, s->inner, tol));
  if (auto sum = std::get_if<MinkowskiSum>(&v))
    return Body::sum(linear_image(m, sum->left, tol), linear_image(m, sum->right, tol));

  const bool square = m.rows() == m.cols();
  const bool invertible = square && rank_of(m, tol.rank) == m.cols();
  if (std::holds_alternative<EuclideanBall>(v)) {
    if (square && orthogonality_defect(m) <= tol.eq) return body;
    throw UnsupportedRepresentation("linear_image: ball maps to an ellipsoid");
  }
  if (!invertible)
    throw UnsupportedRepresentation("linear_image: " + body.kind() + " needs an invertible matrix");
  const Mat inv = m.fullPivLu().inverse();
  if (auto h = std::get_if<HPolytope>(&v)) return Body::hpolytope(h->normals * inv, h->offsets);
  if (auto p = std::get_if<Polar>(&v))
    return Body::polar_of(linear_image(inv.transpose(), p->inner, tol));
  const auto& in = std::get<IntersectionPair>(v);
  return Body::intersection(linear_image(m, in.left, tol), linear_image(m, in.right, tol));
}

Body cartesian_product(const Body& a, const Body& b, const Tolerances& tol) {
  const int n = a.dim(), m = b.dim();
  if (m == 0) return a;
  if (n == 0) return b;
  Mat embed_a = Mat::Zero(n + m, n), embed_b = Mat::Zero(n + m, m);
  embed_a.topRows(n).setIdentity();
  embed_b.bottomRows(m).setIdentity();
  auto za = as<Zonotope>(a);
  auto zb = as<Zonotope>(b);
  if (za && zb) {
    Mat g = Mat::Zero(n + m, za->generators.cols() + zb->generators.cols());
    g.block(0, 0, n, za->generators.cols()) = za->generators;
    g.block(n, za->generators.cols(), m, zb->generators.cols()) = zb->generators;
    return Body::zonotope(std::move(g));
  }
  auto embeddable = [](const Body& x) { return as<Zonotope>(x) || as<VPolytope>(x); };
  if (embeddable(a) && embeddable(b))
    return Body::sum(linear_image(embed_a, a, tol), linear_image(embed_b, b, tol));
  auto fa = facets(a, tol), fb = facets(b, tol);
  if (fa && fb) {
    Mat rows = Mat::Zero(fa->normals.rows() + fb->normals.rows(), n + m);
    rows.block(0, 0, fa->normals.rows(), n) = fa->normals;
    rows.block(fa->normals.rows(), n, fb->normals.rows(), m) = fb->normals;
    Vec off(rows.rows());
    off << fa->offsets, fb->offsets;
    return Body::hpolytope(std::move(rows), std::move(off));
  }
  throw UnsupportedRepresentation("cartesian_product: needs polyhedral factors");
}

// ---------------------------------------------------------------------------

namespace {

double intersection_support_by_duality(const Body& other, const HPolytope& slab, const Vec& a,
                                       const Tolerances& tol) {
  // h_{K cap S}(a) = min over lambda of h_K(a - sum lambda_k s_k) + sum |lambda_k| b_k.
  const double base = support(other, a, tol);
  const int m = static_cast<int>(slab.normals.rows());
  const Vec s0 = slab.normals.row(0).transpose();
  const double r0 = base / slab.offsets(0);
  if (m == 1) {
    double value = 0;
    golden_minimize(
        [&](double l) { return support(other, Vec(a - l * s0), tol) + std::abs(l) * slab.offsets(0); },
        -r0, r0, value);
    return std::min(value, base);
  }
  const Vec s1 = slab.normals.row(1).transpose();
  const double r1 = base / slab.offsets(1);
  double value = 0;
  golden_minimize(
      [&](double l0) {
        double inner = 0;
        golden_minimize(
            [&](double l1) {
              return support(other, Vec(a - l0 * s0 - l1 * s1), tol) + std::abs(l0) * slab.offsets(0) +
                     std::abs(l1) * slab.offsets(1);
            },
            -r1, r1, inner, 120);
        return inner;
      },
      -r0, r0, value, 120);
  return std::min(value, base);
}

}  // namespace

}  // namespace enlarge
