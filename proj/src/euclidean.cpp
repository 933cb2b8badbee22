#include <cmath>
#include <numbers>

#include "enlarge/euclidean.hpp"
#include "enlarge/lp.hpp"

namespace enlarge {

double lambda_euclidean(int n) {
  if (n < 1) throw InputError("lambda_euclidean: n must be >= 1");
  if (n == 1) return 1.0;
  return n * std::exp(std::lgamma(0.5 * n) - std::lgamma(0.5 * (n + 1))) / std::sqrt(std::numbers::pi);
}

double average_segment_radius(const Vec& z) {
  const int n = static_cast<int>(z.size());
  return z.norm() * lambda_euclidean(n) / n;
}

MonteCarloEstimate monte_carlo_average_support(const Body& body, const Vec& a, int trials, std::uint64_t seed,
                                               const Tolerances& tol) {
  if (trials < 1) throw InputError("monte_carlo_average_support: trials must be >= 1");
  if (a.size() != body.dim()) throw InputError("monte_carlo_average_support: dimension mismatch");
  Rng rng(seed);
  double sum = 0, sum_sq = 0;
  for (int t = 0; t < trials; ++t) {
    const Mat q = random_rotation(body.dim(), rng);
    const double h = support(body, Vec(q.transpose() * a), tol);
    sum += h;
    sum_sq += h * h;
  }
  MonteCarloEstimate est;
  est.trials = trials;
  est.mean = sum / trials;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - trials * est.mean * est.mean) / (trials - 1)) : 0.0;
  est.standard_error = std::sqrt(var / trials);
  return est;
}

Certificate orbit_zonotope(const OrthogonalGroupAction& group, const Vec& y, bool allow_nontrivial_commutant,
                           const Tolerances& tol) {
  const int n = group.dim();
  if (y.size() != n) throw InputError("orbit_zonotope: y has the wrong dimension");
  if (std::abs(y.norm() - 1.0) > tol.eq) throw InputError("orbit_zonotope: y must be a unit vector");
  const int comm = commutant_dimension(group.elements(), n, tol);
  if (comm != 1 && !allow_nontrivial_commutant)
    throw HypothesisError("orbit_zonotope: commutant has dimension " + std::to_string(comm) + ", expected 1");
  const double c = static_cast<double>(n) / group.order();
  std::vector<Pair> pairs;
  Mat gens(n, group.order());
  for (int k = 0; k < group.order(); ++k) {
    const Vec gy = group.elements()[k] * y;
    pairs.push_back({gy, c * gy});
    gens.col(k) = c * gy;
  }
  Certificate cert(NormedSpace::lp(n, 2), Body::zonotope(gens), std::move(pairs));
  const double residual = (cert.reconstruction() - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (residual > tol.eq)
    throw HypothesisError("orbit_zonotope: frame identity fails (residual " + std::to_string(residual) + ")");
  return cert;
}

std::string to_string(Smallness s) {
  switch (s) {
    case Smallness::Small: return "small";
    case Smallness::NotSmall: return "not-small";
    case Smallness::Invalid: return "invalid";
  }
  return "invalid";
}

SmallnessReport smallness_check(const Certificate& cert, const Tolerances& tol) {
  if (!cert.space().is_euclidean()) throw UnsupportedRepresentation("smallness_check: space is not l_2^n");
  SmallnessReport rep;
  rep.dim = cert.dim();
  rep.lambda_n = lambda_euclidean(rep.dim);
  for (const Pair& p : cert.pairs()) rep.generator_norm_sum += p.y.norm();
  const double n = rep.dim;
  if (rep.generator_norm_sum < n - tol.feas)
    rep.verdict = Smallness::Invalid;
  else if (std::abs(rep.generator_norm_sum - n) <= tol.feas)
    rep.verdict = Smallness::Small;
  else
    rep.verdict = Smallness::NotSmall;
  return rep;
}

Certificate direct_sum(const Certificate& a, const std::optional<Certificate>& b, const Tolerances& tol) {
  if (!b) return a;
  if (!a.space().is_euclidean() || !b->space().is_euclidean())
    throw InputError("direct_sum: both spaces must be Euclidean");
  const int n = a.dim(), m = b->dim();
  std::vector<Pair> pairs;
  for (const Pair& p : a.pairs()) {
    Pair q{Vec::Zero(n + m), Vec::Zero(n + m)};
    q.f.head(n) = p.f;
    q.y.head(n) = p.y;
    pairs.push_back(std::move(q));
  }
  for (const Pair& p : b->pairs()) {
    Pair q{Vec::Zero(n + m), Vec::Zero(n + m)};
    q.f.tail(m) = p.f;
    q.y.tail(m) = p.y;
    pairs.push_back(std::move(q));
  }
  return Certificate(NormedSpace::lp(n + m, 2), cartesian_product(a.enlargement(), b->enlargement(), tol),
                     std::move(pairs));
}

Certificate hadamard_certificate(int n) {
  if (n < 1 || n > 16) throw InputError("hadamard_certificate: n must lie in [1, 16]");
  const long count = 1L << (n - 1);
  std::vector<Pair> pairs;
  for (long mask = 0; mask < count; ++mask) {
    Vec f = Vec::Ones(n);
    for (int i = 0; i < n - 1; ++i)
      if ((mask >> i) & 1) f(i) = -1.0;
    pairs.push_back({f, f / static_cast<double>(count)});
  }
  return Certificate(NormedSpace::lp(n, 1), Body::ball(n), std::move(pairs));
}

HyperplaneProjection minimal_norm_hyperplane_projection(const Vec& h, const Tolerances& tol) {
  const int n = static_cast<int>(h.size());
  if (n < 1 || std::abs(h.norm() - 1.0) > tol.eq) throw InputError("minimal_norm_hyperplane_projection: h must be a unit vector");
  LpBuilder lp;
  auto w = lp.add_vars(n);
  const int tau = lp.add_var(true);
  LpBuilder::Row dot;
  for (int i = 0; i < n; ++i) dot.emplace_back(w[i], h(i));
  lp.add_eq(std::move(dot), 1.0);
  for (int i = 0; i < n; ++i) {
    auto s = lp.add_vars(n, true);
    LpBuilder::Row row{{tau, -1.0}};
    for (int j = 0; j < n; ++j) {
      const double d = i == j ? 1.0 : 0.0;
      // s_ij >= |d - w_i h_j|
      lp.add_le({{s[j], -1.0}, {w[i], -h(j)}}, -d);
      lp.add_le({{s[j], -1.0}, {w[i], h(j)}}, d);
      row.emplace_back(s[j], 1.0);
    }
    lp.add_le(std::move(row), 0.0);
  }
  lp.set_objective({{tau, 1.0}});
  const LpOutcome out = solve_lp(lp.build(), tol);
  if (!out.feasible()) throw std::runtime_error("minimal_norm_hyperplane_projection: LP failed");
  HyperplaneProjection res;
  res.w = Vec(n);
  for (int i = 0; i < n; ++i) res.w(i) = out.x(w[i]);
  res.w /= res.w.dot(h);
  res.p = Mat::Identity(n, n) - res.w * h.transpose();
  res.norm = res.p.cwiseAbs().rowwise().sum().maxCoeff();
  return res;
}

Remark2Report remark2_enlargement(const Vec& h, const Tolerances& tol) {
  const int n = static_cast<int>(h.size());
  HyperplaneProjection proj = minimal_norm_hyperplane_projection(h, tol);
  Mat gens_a(n, n + 1), gens_z(n, n + 1);
  gens_a << h, proj.p;
  gens_z << proj.w, proj.p;
  std::vector<Pair> pairs{{h, proj.w}};
  for (int j = 0; j < n; ++j) pairs.push_back({Vec::Unit(n, j), proj.p.col(j)});
  Body a = Body::zonotope(gens_a);
  Certificate cert(NormedSpace::lp(n, 2), Body::zonotope(gens_z), std::move(pairs));
  Remark2Report rep{proj, a, cert, verify_certificate(cert, tol), {}, {}, {}, {}, {}};
  const Body cube3 = Body::cube(n, 3.0);
  const Body slab = Body::hpolytope(Mat(h.transpose()), Vec::Ones(1));
  const Body z = cert.zonotope();
  rep.a_in_cube3 = contains_body(a, cube3, tol);
  rep.a_in_slab = contains_body(a, slab, tol);
  rep.z_in_cube3 = contains_body(z, cube3, tol);
  rep.z_in_slab = contains_body(z, slab, tol);
  rep.z_in_a = contains_body(z, a, tol);
  return rep;
}

double hausdorff_to_circumscribed_square(const Body& body, const Tolerances& tol) {
  if (body.dim() != 2) throw InputError("hausdorff_to_circumscribed_square: body must be planar");
  const Mat& net = direction_net(2);
  Vec hb(net.cols());
  for (Eigen::Index k = 0; k < net.cols(); ++k) hb(k) = support(body, net.col(k), tol);
  double best = std::numeric_limits<double>::infinity();
  for (int deg = 0; deg < 90; ++deg) {
    const double t = deg * std::numbers::pi / 180;
    const double c = std::cos(t), s = std::sin(t);
    double worst = 0;
    for (Eigen::Index k = 0; k < net.cols(); ++k) {
      const double u0 = net(0, k), u1 = net(1, k);
      const double hq = std::abs(c * u0 + s * u1) + std::abs(-s * u0 + c * u1);
      worst = std::max(worst, std::abs(hb(k) - hq));
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace enlarge
