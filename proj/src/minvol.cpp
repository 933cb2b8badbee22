#include <cmath>
#include <limits>
#include <numeric>

#include "enlarge/euclidean.hpp"
#include "enlarge/lp.hpp"

namespace enlarge {

namespace {

// Adjugate transpose: d det(A) / d A(i, k) = cof(i, k).
Mat cofactors(const Mat& a) {
  const Eigen::Index n = a.rows();
  if (n == 1) return Mat::Ones(1, 1);
  Mat c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      Mat minor(n - 1, n - 1);
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index s = 0, ss = 0; s < n; ++s) {
          if (s == k) continue;
          minor(rr, ss++) = a(r, s);
        }
        ++rr;
      }
      c(i, k) = ((i + k) % 2 ? -1.0 : 1.0) * minor.determinant();
    }
  return c;
}

struct Problem {
  Mat y0;      // particular solution, Y0 F^T = I
  Mat kernel;  // N x k basis of ker F
  std::vector<std::vector<int>> subsets;
  int n = 0;

  Mat y(const Mat& m) const { return kernel.cols() ? Mat(y0 + m * kernel.transpose()) : y0; }

  double volume(const Mat& m) const {
    const Mat ym = y(m);
    double v = 0;
    for (const auto& s : subsets) v += std::abs(subset_determinant(ym, s));
    return std::ldexp(v, n);
  }
};

// Trust-region sequential LP on the piecewise-polynomial volume in the kernel coordinates.
Mat descend(const Problem& p, Mat m, int iterations, const Tolerances& tol) {
  const int n = p.n;
  const int k = static_cast<int>(p.kernel.cols());
  if (k == 0) return m;
  double current = p.volume(m);
  double radius = 0.5 * std::max(1.0, p.y0.cwiseAbs().maxCoeff());
  for (int it = 0; it < iterations && radius > 1e-10; ++it) {
    const Mat ym = p.y(m);
    LpBuilder lp;
    auto delta = lp.add_vars(n * k);
    std::vector<int> t;
    for (std::size_t s = 0; s < p.subsets.size(); ++s) t.push_back(lp.add_var(true));
    LpBuilder::Row obj;
    for (std::size_t s = 0; s < p.subsets.size(); ++s) {
      const auto& idx = p.subsets[s];
      Mat block(n, n);
      for (int c = 0; c < n; ++c) block.col(c) = ym.col(idx[c]);
      const double d = block.determinant();
      const Mat cof = cofactors(block);
      LpBuilder::Row plus{{t[s], -1.0}}, minus{{t[s], -1.0}};
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < k; ++b) {
          double g = 0;
          for (int c = 0; c < n; ++c) g += cof(a, c) * p.kernel(idx[c], b);
          plus.emplace_back(delta[a * k + b], g);
          minus.emplace_back(delta[a * k + b], -g);
        }
      lp.add_le(std::move(plus), -d);
      lp.add_le(std::move(minus), d);
      obj.emplace_back(t[s], 1.0);
    }
    for (int v : delta) {
      lp.add_le({{v, 1.0}}, radius);
      lp.add_le({{v, -1.0}}, radius);
    }
    lp.set_objective(std::move(obj));
    const LpOutcome out = solve_lp(lp.build(), tol);
    if (!out.feasible()) break;
    Mat step(n, k);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < k; ++b) step(a, b) = out.x(delta[a * k + b]);
    const double trial = p.volume(m + step);
    if (trial < current - 1e-13 * std::max(1.0, current)) {
      m += step;
      current = trial;
      radius *= 1.5;
    } else {
      radius *= 0.3;
    }
  }
  return m;
}

}  // namespace

MinVolumeResult min_volume_search(const NormedSpace& space, const Mat& pool, const MinVolumeOptions& options,
                                  const Tolerances& tol) {
  const int n = space.dim();
  const int gens = options.generators;
  if (pool.rows() != n || pool.cols() < 1) throw InputError("min_volume_search: pool must have " + std::to_string(n) + " rows");
  if (gens < n) throw InputError("min_volume_search: generator budget must be >= n");
  if (options.restarts < 1) throw InputError("min_volume_search: restarts must be >= 1");
  for (Eigen::Index j = 0; j < pool.cols(); ++j)
    if (space.dual_norm(pool.col(j), tol) > 1.0 + tol.feas)
      throw PreconditionError("min_volume_search: pool functional " + std::to_string(j) + " lies outside B(X*)",
                              pool.col(j));

  MinVolumeResult res;
  res.volume = std::numeric_limits<double>::infinity();
  Rng rng(options.seed);
  std::vector<int> order(pool.cols());
  std::vector<std::vector<int>> all_subsets;
  for_each_subset(gens, n, [&](const std::vector<int>& s) { all_subsets.push_back(s); });

  for (int r = 0; r < options.restarts; ++r) {
    Mat f(n, gens);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int j = 0; j < gens; ++j) {
      const int pick = j < static_cast<int>(order.size())
                           ? order[j]
                           : std::uniform_int_distribution<int>(0, static_cast<int>(pool.cols()) - 1)(rng);
      f.col(j) = pool.col(pick);
    }
    // Start from the cheapest parallelepiped inside the assignment.
    double best_start = std::numeric_limits<double>::infinity();
    Mat y0;
    for (const auto& s : all_subsets) {
      const double d = std::abs(subset_determinant(f, s));
      if (d <= tol.rank) continue;
      const double v = std::ldexp(1.0 / d, n);
      if (v < best_start) {
        best_start = v;
        Mat fs(n, n);
        for (int c = 0; c < n; ++c) fs.col(c) = f.col(s[c]);
        const Mat ys = fs.transpose().inverse();
        y0 = Mat::Zero(n, gens);
        for (int c = 0; c < n; ++c) y0.col(s[c]) = ys.col(c);
      }
    }
    if (!std::isfinite(best_start)) {
      res.history.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    ++res.feasible_restarts;
    Problem p;
    p.n = n;
    p.y0 = y0;
    p.subsets = all_subsets;
    Eigen::FullPivLU<Mat> lu(f);
    lu.setThreshold(tol.rank);
    p.kernel = gens > n ? Mat(lu.kernel()) : Mat(gens, 0);
    if (p.kernel.cols() > 0) p.kernel = Eigen::HouseholderQR<Mat>(p.kernel).householderQ() * Mat::Identity(gens, p.kernel.cols());
    const Mat m = descend(p, Mat::Zero(n, p.kernel.cols()), options.descent_iterations, tol);
    const double v = p.volume(m);
    res.history.push_back(v);
    if (v < res.volume) {
      res.volume = v;
      const Mat y = p.y(m);
      std::vector<Pair> pairs;
      for (int j = 0; j < gens; ++j) pairs.push_back({f.col(j), y.col(j)});
      res.certificate.emplace(space, Body::zonotope(y), std::move(pairs));
      res.found = true;
    }
  }
  if (!res.found) {
    res.volume = 0.0;
    return res;
  }
  if (space.is_euclidean()) {
    res.volume_bound_ok = res.volume >= std::ldexp(1.0, n) - 1e-6;
    double sum = 0;
    for (const Pair& q : res.certificate->pairs()) sum += q.y.norm();
    res.norm_sum_bound_ok = sum >= n - tol.feas;
  }
  return res;
}

}  // namespace enlarge
