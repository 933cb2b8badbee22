#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace enlarge {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Coordinates of a point or of a functional relative to the fixed basis.
using Vec = VectorX<double>;
/// Dense operator; also used column-wise as a list of vectors.
using Mat = MatrixX<double>;

using Rng = std::mt19937_64;

// Errors. Everything derives from std::runtime_error so callers can catch wholesale.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedRepresentation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  PreconditionError(const std::string& what, Vec witness_ = {})
      : std::runtime_error(what), witness(std::move(witness_)) {}
  Vec witness;
};
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Slack policy shared by every check in the library.
struct Tolerances {
  double feas = 1e-9;   ///< feasibility / containment slack
  double eq = 1e-9;     ///< equality residuals
  double rank = 1e-10;  ///< relative singular-value cutoff

  /// Throws InputError unless all are positive and feas >= eq.
  void validate() const;
};

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& m) {
  return m.allFinite();
}

/// max |Q^T Q - I|.
template <typename Derived>
typename Derived::Scalar orthogonality_defect(const Eigen::MatrixBase<Derived>& q) {
  using Scalar = typename Derived::Scalar;
  const auto n = q.cols();
  return (q.transpose() * q - MatrixX<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff();
}

/// Haar-distributed element of O(n): QR of a Gaussian matrix with the sign of
/// diag(R) folded into Q.
template <typename Scalar = double>
MatrixX<Scalar> random_rotation(int n, Rng& rng) {
  if (n < 1) throw InputError("random_rotation: dimension must be >= 1");
  std::normal_distribution<Scalar> normal(0, 1);
  MatrixX<Scalar> g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(g);
  MatrixX<Scalar> q = qr.householderQ();
  const MatrixX<Scalar>& r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

/// Dimension of {M : M g = g M for all g in group}, counted as the number of
/// singular values of the stacked commutator operator below rank_tol * sigma_max.
int commutant_dimension(const std::vector<Mat>& group, int n, const Tolerances& tol = {});

/// Deterministic unit direction net: 720 half-degree angles in 2-D, a Fibonacci
/// lattice in 3-D, normalised fixed-seed Gaussians beyond. Columns are directions.
const Mat& direction_net(int n);
/// Net with an explicit size (not cached).
Mat make_direction_net(int n, int count, std::uint64_t seed = 0x5eedULL);

/// Minimise a convex function on [lo, hi] by golden-section search.
/// Returns the minimiser; `value` receives the minimum.
template <typename F>
double golden_minimize(F&& f, double lo, double hi, double& value, int iterations = 200) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iterations && (b - a) > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double x = fc <= fd ? c : d;
  value = std::min(fc, fd);
  for (double end : {lo, hi}) {
    double fe = f(end);
    if (fe < value) {
      value = fe;
      x = end;
    }
  }
  return x;
}

/// Parse "1,0,-0.5" into a vector.
Vec parse_coords(const std::string& text);

/// Orthonormal basis (columns) of the orthogonal complement of v.
Mat orthogonal_complement(const Vec& v);

/// Determinant of the columns of m selected by idx (square).
double subset_determinant(const Mat& m, const std::vector<int>& idx);

/// Calls visit(subset) for every k-element subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_subset(int n, int k, Visit&& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Binomial coefficient as double (overflow-safe for budget checks).
double binomial(int n, int k);

}  // namespace enlarge
