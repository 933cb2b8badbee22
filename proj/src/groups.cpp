#include <cmath>
#include <numbers>

#include "enlarge/euclidean.hpp"

namespace enlarge {

namespace {

constexpr double kMatchTol = 1e-8;

int find_element(const std::vector<Mat>& elements, const Mat& m) {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if ((elements[i] - m).cwiseAbs().maxCoeff() <= kMatchTol) return static_cast<int>(i);
  return -1;
}

Mat rotation2(double t) {
  Mat m(2, 2);
  m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return m;
}

Mat reflection2(double t) {
  Mat m(2, 2);
  m << std::cos(2 * t), std::sin(2 * t), std::sin(2 * t), -std::cos(2 * t);
  return m;
}

// Rotation by angle t about the unit axis u (Rodrigues).
Mat axis_rotation(Vec u, double t) {
  u.normalize();
  Mat k(3, 3);
  k << 0, -u(2), u(1), u(2), 0, -u(0), -u(1), u(0), 0;
  return Mat::Identity(3, 3) + std::sin(t) * k + (1 - std::cos(t)) * k * k;
}

}  // namespace

OrthogonalGroupAction::OrthogonalGroupAction(std::vector<Mat> elements, const Tolerances& tol)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw InputError("group: no elements");
  const auto n = elements_.front().rows();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Mat& g = elements_[i];
    if (g.rows() != n || g.cols() != n) throw InputError("group: element " + std::to_string(i) + " is not n x n");
    if (!g.allFinite() || orthogonality_defect(g) > std::max(tol.eq, 1e-9))
      throw InputError("group: element " + std::to_string(i) + " is not orthogonal");
  }
  if (find_element(elements_, Mat::Identity(n, n)) < 0) throw InputError("group: identity missing");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (find_element(elements_, elements_[i].transpose()) < 0)
      throw InputError("group: inverse of element " + std::to_string(i) + " missing");
    for (std::size_t j = 0; j < elements_.size(); ++j)
      if (find_element(elements_, elements_[i] * elements_[j]) < 0)
        throw InputError("group: not closed (product of elements " + std::to_string(i) + " and " +
                         std::to_string(j) + ")");
  }
}

OrthogonalGroupAction OrthogonalGroupAction::generated_by(const std::vector<Mat>& generators, const Tolerances& tol,
                                                          int max_order) {
  if (generators.empty()) throw InputError("group: no generators");
  const auto n = generators.front().rows();
  std::vector<Mat> elements{Mat::Identity(n, n)};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const Mat& g : generators) {
      Mat p = g * elements[head];
      if (find_element(elements, p) >= 0) continue;
      elements.push_back(std::move(p));
      if (static_cast<int>(elements.size()) > max_order) throw InputError("group: generated group is too large");
    }
  }
  return OrthogonalGroupAction(std::move(elements), tol);
}

namespace groups {

OrthogonalGroupAction dihedral(int k) {
  if (k < 1) throw InputError("dihedral: k must be >= 1");
  std::vector<Mat> g;
  for (int j = 0; j < k; ++j) {
    g.push_back(rotation2(2 * std::numbers::pi * j / k));
    g.push_back(reflection2(std::numbers::pi * j / k));
  }
  return OrthogonalGroupAction(std::move(g));
}

OrthogonalGroupAction cyclic(int k) {
  if (k < 1) throw InputError("cyclic: k must be >= 1");
  std::vector<Mat> g;
  for (int j = 0; j < k; ++j) g.push_back(rotation2(2 * std::numbers::pi * j / k));
  return OrthogonalGroupAction(std::move(g));
}

OrthogonalGroupAction octahedral() {
  std::vector<Mat> g;
  int perm[3] = {0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      Mat m = Mat::Zero(3, 3);
      for (int i = 0; i < 3; ++i) m(i, perm[i]) = (signs >> i) & 1 ? -1.0 : 1.0;
      g.push_back(m);
    }
  } while (std::next_permutation(perm, perm + 3));
  return OrthogonalGroupAction(std::move(g));
}

OrthogonalGroupAction icosahedral() {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  Vec axis(3);
  axis << 0, 1, phi;
  Mat cyc = Mat::Zero(3, 3);
  cyc(0, 2) = cyc(1, 0) = cyc(2, 1) = 1.0;
  Mat flip = Mat::Identity(3, 3);
  flip(1, 1) = flip(2, 2) = -1.0;
  return OrthogonalGroupAction::generated_by(
      {axis_rotation(axis, 2 * std::numbers::pi / 5), cyc, flip, Mat(-Mat::Identity(3, 3))});
}

OrthogonalGroupAction by_name(const std::string& name) {
  if (name == "octahedral") return octahedral();
  if (name == "icosahedral") return icosahedral();
  if (name.size() >= 2 && (name[0] == 'd' || name[0] == 'c')) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(name.substr(1), &used);
      if (used != name.size() - 1) k = 0;
    } catch (const std::exception&) {
      k = 0;
    }
    if (k >= 1 && k <= 720) return name[0] == 'd' ? dihedral(k) : cyclic(k);
  }
  throw InputError("unknown group '" + name + "' (expected dK, cK, octahedral or icosahedral)");
}

}  // namespace groups

}  // namespace enlarge
