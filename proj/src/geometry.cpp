#include <algorithm>
#include <cmath>
#include <numbers>

#include "enlarge/body.hpp"

namespace enlarge {

namespace {

// Drop columns equal (or, with symmetric, opposite) to an earlier column.
Mat dedupe_columns(const Mat& pts, double tol, bool symmetric) {
  std::vector<int> keep;
  for (int j = 0; j < pts.cols(); ++j) {
    const double scale = 1.0 + pts.col(j).cwiseAbs().maxCoeff();
    bool dup = false;
    for (int k : keep) {
      if ((pts.col(j) - pts.col(k)).cwiseAbs().maxCoeff() <= tol * scale ||
          (symmetric && (pts.col(j) + pts.col(k)).cwiseAbs().maxCoeff() <= tol * scale)) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(j);
  }
  Mat out(pts.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = pts.col(keep[i]);
  return out;
}

Mat symmetrize(const Mat& pts) {
  Mat both(pts.rows(), 2 * pts.cols());
  both << pts, -pts;
  return both;
}

// Orthonormal basis of the column span, with its rank.
Mat column_span(const Mat& m, double rel) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
  const Vec& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * std::max(s(0), 1e-300)) ++r;
  return svd.matrixU().leftCols(r);
}

// Unit normal to the span of r-1 columns in R^r, or empty if they are dependent.
std::optional<Vec> hyperplane_normal(const Mat& cols, double rel) {
  const int r = static_cast<int>(cols.rows());
  if (cols.cols() == 0) {
    if (r != 1) return std::nullopt;
    return Vec::Ones(1);
  }
  Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeFullU);
  const Vec& s = svd.singularValues();
  if (s(s.size() - 1) <= rel * s(0)) return std::nullopt;
  return Vec(svd.matrixU().col(r - 1));
}

// 2-D convex hull (monotone chain), CCW, collinear points dropped.
Mat convex_hull_2d(const Mat& pts, double tol) {
  std::vector<Eigen::Vector2d> p;
  for (int j = 0; j < pts.cols(); ++j) p.emplace_back(pts(0, j), pts(1, j));
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  if (p.size() < 3) {
    Mat out(2, static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = p[i];
    return out;
  }
  double scale = 0;
  for (const auto& q : p) scale = std::max(scale, q.cwiseAbs().maxCoeff());
  const double area_tol = tol * std::max(scale * scale, 1e-300);
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::Vector2d> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= area_tol) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= area_tol) --k;
    h[k++] = p[i];
  }
  h.resize(k > 1 ? k - 1 : k);
  Mat out(2, static_cast<Eigen::Index>(h.size()));
  for (std::size_t i = 0; i < h.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = h[i];
  return out;
}

double shoelace(const Mat& poly) {
  double a = 0;
  const auto m = poly.cols();
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto j = (i + 1) % m;
    a += poly(0, i) * poly(1, j) - poly(0, j) * poly(1, i);
  }
  return std::abs(a) / 2;
}

std::optional<Mat> hpolytope_vertices(const HPolytope& h, const Tolerances& tol, double budget) {
  const int n = static_cast<int>(h.normals.cols());
  const int m = static_cast<int>(h.normals.rows());
  if (binomial(m, n) * std::pow(2.0, n - 1) > budget) return std::nullopt;
  std::vector<Vec> found;
  Mat a(n, n);
  Vec b(n);
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    for (int i = 0; i < n; ++i) a.row(i) = h.normals.row(idx[i]);
    Eigen::FullPivLU<Mat> lu(a);
    lu.setThreshold(tol.rank);
    if (!lu.isInvertible()) return;
    for (long mask = 0; mask < (1L << (n - 1)); ++mask) {
      for (int i = 0; i < n; ++i) {
        const double s = (i > 0 && (mask >> (i - 1)) & 1) ? -1.0 : 1.0;
        b(i) = s * h.offsets(idx[i]);
      }
      Vec x = lu.solve(b);
      const double g = ((h.normals * x).array().abs() / h.offsets.array()).maxCoeff();
      if (g <= 1.0 + 1e-9) found.push_back(x);
    }
  });
  Mat out(n, static_cast<Eigen::Index>(found.size()));
  for (std::size_t i = 0; i < found.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = found[i];
  return dedupe_columns(out, 1e-9, true);
}

// Facet normals (offset 1) of a full-dimensional zonotope.
std::optional<Mat> zonotope_facet_rows(const Mat& y, const Tolerances& tol, double budget) {
  const int n = static_cast<int>(y.rows());
  const int k = static_cast<int>(y.cols());
  if (column_span(y, tol.rank).cols() < n) return std::nullopt;
  if (binomial(k, n - 1) > budget) return std::nullopt;
  std::vector<Vec> rows;
  Mat sub(n, n - 1);
  for_each_subset(k, n - 1, [&](const std::vector<int>& idx) {
    for (int i = 0; i < n - 1; ++i) sub.col(i) = y.col(idx[i]);
    auto v = hyperplane_normal(sub, tol.rank);
    if (!v) return;
    const double h = (y.transpose() * *v).cwiseAbs().sum();
    rows.push_back(*v / h);
  });
  Mat out(n, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = rows[i];
  return Mat(dedupe_columns(out, 1e-9, true).transpose());
}

HPolytope normalized(const HPolytope& h) {
  HPolytope out{h.normals, Vec::Ones(h.offsets.size())};
  for (int k = 0; k < h.normals.rows(); ++k) out.normals.row(k) /= h.offsets(k);
  Mat cols = dedupe_columns(Mat(out.normals.transpose()), 1e-12, true);
  out.normals = cols.transpose();
  out.offsets = Vec::Ones(cols.cols());
  return out;
}

}  // namespace

std::optional<Mat> zonotope_vertices(const Mat& generators, const Tolerances& tol, double budget) {
  const int n = static_cast<int>(generators.rows());
  std::vector<int> nonzero;
  for (int j = 0; j < generators.cols(); ++j)
    if (generators.col(j).norm() > 0) nonzero.push_back(j);
  if (nonzero.empty()) return Mat::Zero(n, 1);
  Mat y(n, static_cast<Eigen::Index>(nonzero.size()));
  for (std::size_t j = 0; j < nonzero.size(); ++j) y.col(static_cast<Eigen::Index>(j)) = generators.col(nonzero[j]);

  // Work inside the linear span.
  const Mat basis = column_span(y, tol.rank);
  const int r = static_cast<int>(basis.cols());
  const Mat yr = basis.transpose() * y;
  const int k = static_cast<int>(y.cols());
  if (binomial(k, r - 1) * std::pow(2.0, r - 1) > budget) return std::nullopt;

  std::vector<Vec> found;
  double work = 0;
  bool over = false;
  Mat sub(r, r - 1);
  for_each_subset(k, r - 1, [&](const std::vector<int>& idx) {
    if (over) return;
    for (int i = 0; i < r - 1; ++i) sub.col(i) = yr.col(idx[i]);
    auto v = hyperplane_normal(sub, tol.rank);
    if (!v) return;
    const Vec proj = yr.transpose() * *v;
    const double scale = proj.cwiseAbs().maxCoeff();
    Vec base = Vec::Zero(r);
    std::vector<int> flat;
    for (int j = 0; j < k; ++j) {
      if (std::abs(proj(j)) <= 1e-12 * scale)
        flat.push_back(j);
      else
        base += (proj(j) > 0 ? 1.0 : -1.0) * yr.col(j);
    }
    const double combos = std::pow(2.0, static_cast<double>(flat.size()));
    work += combos;
    if (work > budget || flat.size() > 30) {
      over = true;
      return;
    }
    for (long mask = 0; mask < (1L << flat.size()); ++mask) {
      Vec p = base;
      for (std::size_t i = 0; i < flat.size(); ++i) p += ((mask >> i) & 1 ? 1.0 : -1.0) * yr.col(flat[i]);
      found.push_back(p);
    }
  });
  if (over) return std::nullopt;
  Mat pts(r, static_cast<Eigen::Index>(found.size()));
  for (std::size_t i = 0; i < found.size(); ++i) pts.col(static_cast<Eigen::Index>(i)) = found[i];
  if (r == 2) pts = planar_hull(pts, tol);
  else pts = dedupe_columns(pts, 1e-10, true);
  return Mat(basis * pts);
}

Mat planar_hull(const Mat& points, const Tolerances& tol) {
  if (points.rows() != 2) throw InputError("planar_hull: points must be 2-D");
  return convex_hull_2d(symmetrize(points), std::min(tol.eq, 1e-12));
}

std::optional<Mat> vertex_candidates(const Body& body, const Tolerances& tol, double budget) {
  const auto& v = body.node().value;
  if (auto vp = std::get_if<VPolytope>(&v)) return vp->vertices;
  if (auto z = std::get_if<Zonotope>(&v)) return zonotope_vertices(z->generators, tol, budget);
  if (std::holds_alternative<EuclideanBall>(v)) return std::nullopt;
  if (auto s = std::get_if<Scaled>(&v)) {
    auto inner = vertex_candidates(s->inner, tol, budget);
    if (!inner) return std::nullopt;
    return Mat(s->factor * *inner);
  }
  if (auto p = std::get_if<Polar>(&v)) {
    auto f = facets(p->inner, tol, budget);
    if (!f) return std::nullopt;
    return Mat(f->normals.transpose());
  }
  if (auto sum = std::get_if<MinkowskiSum>(&v)) {
    auto a = vertex_candidates(sum->left, tol, budget);
    auto b = vertex_candidates(sum->right, tol, budget);
    if (!a || !b) return std::nullopt;
    if (2.0 * a->cols() * b->cols() > budget) return std::nullopt;
    Mat out(body.dim(), 2 * a->cols() * b->cols());
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < a->cols(); ++i)
      for (Eigen::Index j = 0; j < b->cols(); ++j) {
        out.col(c++) = a->col(i) + b->col(j);
        out.col(c++) = a->col(i) - b->col(j);
      }
    if (body.dim() == 2) return planar_hull(out, tol);
    return dedupe_columns(out, 1e-10, true);
  }
  if (auto h = std::get_if<HPolytope>(&v)) return hpolytope_vertices(*h, tol, budget);
  auto f = facets(body, tol, budget);
  if (!f) return std::nullopt;
  return hpolytope_vertices(*f, tol, budget);
}

std::optional<HPolytope> facets(const Body& body, const Tolerances& tol, double budget) {
  const auto& v = body.node().value;
  const int n = body.dim();
  if (auto h = std::get_if<HPolytope>(&v)) return normalized(*h);
  if (std::holds_alternative<EuclideanBall>(v)) return std::nullopt;
  if (auto z = std::get_if<Zonotope>(&v)) {
    auto rows = zonotope_facet_rows(z->generators, tol, budget);
    if (!rows) return std::nullopt;
    return HPolytope{*rows, Vec::Ones(rows->rows())};
  }
  if (auto s = std::get_if<Scaled>(&v)) {
    auto f = facets(s->inner, tol, budget);
    if (!f) return std::nullopt;
    f->normals /= s->factor;
    return f;
  }
  if (auto p = std::get_if<Polar>(&v)) {
    auto pts = vertex_candidates(p->inner, tol, budget);
    if (!pts) return std::nullopt;
    Mat rows = dedupe_columns(*pts, 1e-12, true).transpose();
    return HPolytope{rows, Vec::Ones(rows.rows())};
  }
  if (auto in = std::get_if<IntersectionPair>(&v)) {
    auto a = facets(in->left, tol, budget);
    auto b = facets(in->right, tol, budget);
    if (!a || !b) return std::nullopt;
    Mat rows(a->normals.rows() + b->normals.rows(), n);
    rows << a->normals, b->normals;
    return normalized(HPolytope{rows, Vec::Ones(rows.rows())});
  }
  // V-polytopes and sums: facets are the vertices of the polar H-polytope.
  auto pts = vertex_candidates(body, tol, budget);
  if (!pts) return std::nullopt;
  if (column_span(*pts, tol.rank).cols() < n) return std::nullopt;
  if (n == 2) {
    const Mat hull = planar_hull(*pts, tol);
    std::vector<Vec> rows;
    for (Eigen::Index i = 0; i < hull.cols(); ++i) {
      const Vec a = hull.col(i), b = hull.col((i + 1) % hull.cols());
      Vec normal(2);
      normal << b(1) - a(1), a(0) - b(0);
      rows.push_back(normal / normal.dot(a));
    }
    Mat r(2, static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) r.col(static_cast<Eigen::Index>(i)) = rows[i];
    Mat rr = dedupe_columns(r, 1e-10, true).transpose();
    return HPolytope{rr, Vec::Ones(rr.rows())};
  }
  auto polar_vertices = hpolytope_vertices(HPolytope{pts->transpose(), Vec::Ones(pts->cols())}, tol, budget);
  if (!polar_vertices) return std::nullopt;
  Mat rows = polar_vertices->transpose();
  return HPolytope{rows, Vec::Ones(rows.rows())};
}

double volume(const Body& body, const Tolerances& tol) {
  const auto& v = body.node().value;
  const int n = body.dim();
  if (auto b = std::get_if<EuclideanBall>(&v))
    return std::exp(0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0)) * std::pow(b->radius, n);
  if (auto s = std::get_if<Scaled>(&v)) return std::pow(s->factor, n) * volume(s->inner, tol);
  if (auto z = std::get_if<Zonotope>(&v)) {
    const int k = static_cast<int>(z->generators.cols());
    if (binomial(k, n) > 5e6) throw UnsupportedRepresentation("volume: too many generator subsets");
    double total = 0;
    for_each_subset(k, n, [&](const std::vector<int>& idx) {
      total += std::abs(subset_determinant(z->generators, idx));
    });
    return std::ldexp(total, n);
  }
  if (auto h = std::get_if<HPolytope>(&v); h && h->normals.rows() == n) {
    const double det = std::abs(h->normals.determinant());
    if (det <= tol.rank * std::pow(h->normals.norm(), n)) throw UnsupportedRepresentation("volume: unbounded slab");
    return std::ldexp(h->offsets.prod() / det, n);
  }
  if (!is_polyhedral(body)) throw UnsupportedRepresentation("volume: " + body.kind() + " is not polyhedral");
  if (n == 1) return 2.0 * support(body, Vec::Ones(1), tol);
  if (n == 2) {
    auto pts = vertex_candidates(body, tol);
    if (!pts) throw UnsupportedRepresentation("volume: vertex enumeration over budget");
    return shoelace(planar_hull(*pts, tol));
  }
  if (n == 3) {
    auto f = facets(body, tol);
    auto pts = vertex_candidates(body, tol);
    if (!f || !pts) throw UnsupportedRepresentation("volume: enumeration over budget");
    const Mat all = symmetrize(*pts);
    double total = 0;
    for (Eigen::Index k = 0; k < f->normals.rows(); ++k) {
      const Vec a = f->normals.row(k).transpose();
      const Vec vals = all.transpose() * a;
      const double hmax = vals.maxCoeff();
      if (hmax < 1.0 - 1e-9) continue;  // redundant row
      const Mat plane = orthogonal_complement(a);
      std::vector<int> on;
      for (Eigen::Index j = 0; j < all.cols(); ++j)
        if (vals(j) >= hmax - 1e-9 * std::max(1.0, hmax)) on.push_back(static_cast<int>(j));
      Mat face(2, static_cast<Eigen::Index>(on.size()));
      for (std::size_t j = 0; j < on.size(); ++j) face.col(static_cast<Eigen::Index>(j)) = plane.transpose() * all.col(on[j]);
      const double area = shoelace(convex_hull_2d(face, 1e-12));
      total += 2.0 * area * hmax / (3.0 * a.norm());
    }
    return total;
  }
  throw UnsupportedRepresentation("volume: polytopes beyond dimension 3 other than zonotopes and parallelepipeds");
}

}  // namespace enlarge
