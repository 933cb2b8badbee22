#include "enlarge/certificate.hpp"

#include <cmath>

namespace enlarge {

Certificate::Certificate(NormedSpace space, Body enlargement, std::vector<Pair> pairs)
    : space_(std::move(space)), enlargement_(std::move(enlargement)), pairs_(std::move(pairs)) {
  const int n = space_.dim();
  if (enlargement_.dim() != n) throw InputError("certificate: enlargement dimension differs from space");
  for (std::size_t j = 0; j < pairs_.size(); ++j) {
    if (pairs_[j].f.size() != n || pairs_[j].y.size() != n)
      throw InputError("certificate: pair " + std::to_string(j) + " has wrong dimension");
    if (!pairs_[j].f.allFinite() || !pairs_[j].y.allFinite())
      throw InputError("certificate: pair " + std::to_string(j) + " has non-finite entries");
  }
}

Mat Certificate::functionals() const {
  Mat m(dim(), static_cast<Eigen::Index>(pairs_.size()));
  for (std::size_t j = 0; j < pairs_.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = pairs_[j].f;
  return m;
}

Mat Certificate::vectors() const {
  Mat m(dim(), static_cast<Eigen::Index>(pairs_.size()));
  for (std::size_t j = 0; j < pairs_.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = pairs_[j].y;
  return m;
}

Mat Certificate::reconstruction() const { return vectors() * functionals().transpose(); }

Body Certificate::zonotope() const { return Body::zonotope(vectors()); }

VerificationReport verify_certificate(const Certificate& cert, const Tolerances& tol) {
  VerificationReport rep;
  const int n = cert.dim();
  rep.dual_excess = -1.0;
  for (std::size_t j = 0; j < cert.pairs().size(); ++j) {
    const double excess = cert.space().dual_norm(cert.pairs()[j].f, tol) - 1.0;
    if (excess > rep.dual_excess) {
      rep.dual_excess = excess;
      rep.worst_pair = static_cast<int>(j);
    }
  }
  rep.dual_ok = rep.dual_excess <= tol.feas;
  rep.reconstruction_residual = (cert.reconstruction() - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  rep.reconstruction_ok = rep.reconstruction_residual <= tol.eq;

  const Body z = cert.zonotope();
  rep.containment = contains_body(z, cert.enlargement(), tol);
  rep.containment_ok = rep.containment.contained;
  rep.sampled = rep.containment.mode == ContainmentMode::Sampled;
  rep.unit_ball_inside = contains_body(cert.space().unit_ball(), z, tol);
  rep.valid = rep.dual_ok && rep.reconstruction_ok && rep.containment_ok;
  return rep;
}

Certificate parallelepiped_certificate(const NormedSpace& space, const std::vector<Vec>& f,
                                       const Tolerances& tol) {
  const int n = space.dim();
  if (static_cast<int>(f.size()) != n)
    throw InputError("parallelepiped_certificate: need exactly " + std::to_string(n) + " functionals");
  Mat rows(n, n);
  for (int i = 0; i < n; ++i) {
    if (f[i].size() != n) throw InputError("parallelepiped_certificate: functional of wrong dimension");
    rows.row(i) = f[i].transpose();
  }
  for (int i = 0; i < n; ++i)
    if (space.dual_norm(f[i], tol) > 1.0 + tol.feas)
      throw PreconditionError("parallelepiped_certificate: functional " + std::to_string(i) +
                                  " has dual norm > 1, so the parallelepiped misses part of B(X)",
                              f[i]);
  Eigen::FullPivLU<Mat> lu(rows);
  lu.setThreshold(tol.rank);
  if (!lu.isInvertible()) throw RankError("parallelepiped_certificate: functionals are linearly dependent");
  const Mat dual = lu.inverse();  // columns x_j with f_i(x_j) = delta_ij
  std::vector<Pair> pairs;
  for (int i = 0; i < n; ++i) pairs.push_back({f[i], dual.col(i)});
  return Certificate(space, Body::hpolytope(rows, Vec::Ones(n)), std::move(pairs));
}

namespace {

bool same_space(const NormedSpace& a, const NormedSpace& b, const Tolerances& tol) {
  if (a.dim() != b.dim()) return false;
  if (&a.unit_ball().node() == &b.unit_ball().node()) return true;
  const Mat net = make_direction_net(a.dim(), 64, 0xc0ffee);
  for (Eigen::Index k = 0; k < net.cols(); ++k) {
    const double ha = support(a.unit_ball(), net.col(k), tol);
    const double hb = support(b.unit_ball(), net.col(k), tol);
    if (std::abs(ha - hb) > 1e-7 * std::max(1.0, ha)) return false;
  }
  return true;
}

}  // namespace

Certificate convex_combination(const Certificate& c1, const Certificate& c2, double lambda,
                               const Tolerances& tol) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InputError("convex_combination: lambda must lie in [0, 1]");
  if (!same_space(c1.space(), c2.space(), tol)) throw InputError("convex_combination: spaces differ");
  if (lambda == 1.0) return c1;
  if (lambda == 0.0) return Certificate(c1.space(), c2.enlargement(), c2.pairs());
  std::vector<Pair> pairs;
  for (const Pair& p : c1.pairs()) pairs.push_back({p.f, lambda * p.y});
  for (const Pair& p : c2.pairs()) pairs.push_back({p.f, (1.0 - lambda) * p.y});
  Body a = minkowski_sum(scale(lambda, c1.enlargement()), scale(1.0 - lambda, c2.enlargement()));
  return Certificate(c1.space(), std::move(a), std::move(pairs));
}

}  // namespace enlarge
