#include "enlarge/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace enlarge {

void Tolerances::validate() const {
  if (!(feas > 0 && eq > 0 && rank > 0))
    throw InputError("tolerances must be strictly positive");
  if (feas < eq) throw InputError("tolerances: eps_feas must be >= eps_eq");
}

int commutant_dimension(const std::vector<Mat>& group, int n, const Tolerances& tol) {
  if (n < 1) throw InputError("commutant_dimension: dimension must be >= 1");
  if (group.empty()) return n * n;
  const int nn = n * n;
  // vec(M g - g M) = (g^T (x) I - I (x) g) vec(M), column-major vec.
  Mat stacked(static_cast<Eigen::Index>(group.size()) * nn, nn);
  const Mat id = Mat::Identity(n, n);
  for (std::size_t k = 0; k < group.size(); ++k) {
    const Mat& g = group[k];
    if (g.rows() != n || g.cols() != n)
      throw InputError("commutant_dimension: group element has wrong shape");
    Mat block = Mat::Zero(nn, nn);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        block.block(a * n, b * n, n, n) += g(b, a) * id;  // g^T (x) I
        block.block(a * n, b * n, n, n) -= (a == b ? 1.0 : 0.0) * g;
      }
    stacked.block(static_cast<Eigen::Index>(k) * nn, 0, nn, nn) = block;
  }
  Eigen::JacobiSVD<Mat> svd(stacked);
  const Vec& sigma = svd.singularValues();
  const double top = sigma.size() ? sigma(0) : 0.0;
  if (top == 0.0) return nn;
  int nullity = nn - static_cast<int>(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) < tol.rank * top) ++nullity;
  return nullity;
}

Mat make_direction_net(int n, int count, std::uint64_t seed) {
  if (n < 1 || count < 1) throw InputError("direction net: bad size");
  Mat net(n, count);
  if (n == 1) {
    for (int j = 0; j < count; ++j) net(0, j) = (j % 2 == 0) ? 1.0 : -1.0;
    return net;
  }
  if (n == 2) {
    for (int j = 0; j < count; ++j) {
      const double t = 2.0 * std::numbers::pi * j / count;
      net(0, j) = std::cos(t);
      net(1, j) = std::sin(t);
    }
    return net;
  }
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      net(0, j) = r * std::cos(golden * j);
      net(1, j) = r * std::sin(golden * j);
      net(2, j) = z;
    }
    return net;
  }
  Rng rng(seed);
  std::normal_distribution<double> normal;
  for (int j = 0; j < count; ++j) {
    Vec v(n);
    do {
      for (int i = 0; i < n; ++i) v(i) = normal(rng);
    } while (v.norm() < 1e-12);
    net.col(j) = v.normalized();
  }
  return net;
}

const Mat& direction_net(int n) {
  static std::mutex mutex;
  static std::map<int, Mat> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    const int count = n == 1 ? 2 : (n == 2 ? 720 : 10000);
    it = cache.emplace(n, make_direction_net(n, count)).first;
  }
  return it->second;
}

Vec parse_coords(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError("cannot parse coordinate '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw InputError("cannot parse coordinate '" + item + "'");
    if (!std::isfinite(v)) throw InputError("non-finite coordinate '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw InputError("empty coordinate list");
  return Eigen::Map<Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Mat orthogonal_complement(const Vec& v) {
  const auto n = v.size();
  if (v.norm() == 0.0) throw InputError("orthogonal_complement: zero vector");
  Eigen::HouseholderQR<Mat> qr{Mat(v)};
  Mat q = qr.householderQ();
  return q.rightCols(n - 1);
}

double subset_determinant(const Mat& m, const std::vector<int>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Mat sub(m.rows(), k);
  for (Eigen::Index j = 0; j < k; ++j) sub.col(j) = m.col(idx[j]);
  if (k == 1) return sub(0, 0);
  if (k == 2) return sub(0, 0) * sub(1, 1) - sub(0, 1) * sub(1, 0);
  if (k == 3)
    return sub(0, 0) * (sub(1, 1) * sub(2, 2) - sub(1, 2) * sub(2, 1)) -
           sub(0, 1) * (sub(1, 0) * sub(2, 2) - sub(1, 2) * sub(2, 0)) +
           sub(0, 2) * (sub(1, 0) * sub(2, 1) - sub(1, 1) * sub(2, 0));
  return sub.fullPivLu().determinant();
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace enlarge
