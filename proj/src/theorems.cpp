#include <cmath>
#include <limits>
#include <numbers>

#include "enlarge/certificate.hpp"
#include "lp_encoding.hpp"

namespace enlarge {

namespace {

// max over f in B(X*) of min(<f, a>, <f, b>) by one LP.
double pair_value_lp(const Body& ball, const Vec& a, const Vec& b, const Tolerances& tol) {
  const int n = ball.dim();
  LpBuilder lp;
  auto f = lp.add_vars(n);
  const int t = lp.add_var();
  const int one = lp.add_var(true);
  lp.add_eq({{one, 1.0}}, 1.0);
  LpBuilder::Row ra{{t, 1.0}}, rb{{t, 1.0}};
  for (int i = 0; i < n; ++i) {
    ra.emplace_back(f[i], -a(i));
    rb.emplace_back(f[i], -b(i));
  }
  lp.add_le(std::move(ra), 0.0);
  lp.add_le(std::move(rb), 0.0);
  detail::encode_support_le(lp, ball, f, one);
  lp.set_objective({{t, -1.0}});
  const LpOutcome out = solve_lp(lp.build(), tol);
  if (!out.feasible()) throw std::runtime_error("pair norming LP failed");
  return -out.objective;
}

void require_unit(double value, double target, double tol, const std::string& what) {
  if (std::abs(value - target) > tol) throw PreconditionError(what + " (value " + std::to_string(value) + ")");
}

}  // namespace

double pair_norming_value(const NormedSpace& space, const Vec& a, const Vec& b, bool& exact,
                          std::string& method, const Tolerances& tol) {
  const Body& ball = space.unit_ball();
  double best = 0.0;
  exact = true;
  for (double s : {1.0, -1.0}) {
    const Vec bs = s * b;
    double value;
    if (auto e = as<EuclideanBall>(ball)) {
      // Distance from 0 to the segment [a, bs], in dual units.
      const Vec d = bs - a;
      const double lam = d.squaredNorm() > 0 ? std::clamp(-a.dot(d) / d.squaredNorm(), 0.0, 1.0) : 0.0;
      value = (a + lam * d).norm() / e->radius;
      method = "euclidean-closed-form";
    } else if (is_polyhedral(ball)) {
      value = pair_value_lp(ball, a, bs, tol);
      method = "sign-pattern-lp";
    } else {
      try {
        // max_f min_lambda <f, lambda a + (1 - lambda) b> = min_lambda gauge(lambda a + (1 - lambda) b).
        golden_minimize([&](double l) { return gauge(ball, Vec(l * a + (1 - l) * bs), tol); }, 0.0, 1.0, value);
        method = "minimax-golden-section";
      } catch (const UnsupportedRepresentation&) {
        const Mat& net = direction_net(space.dim());
        value = 0.0;
        for (Eigen::Index k = 0; k < net.cols(); ++k) {
          const Vec f = net.col(k) / support(ball, net.col(k), tol);
          value = std::max(value, std::min(std::abs(f.dot(a)), std::abs(f.dot(bs))));
        }
        exact = false;
        method = "sampled-lower-bound";
      }
    }
    best = std::max(best, value);
  }
  return best;
}

C2Result compute_c2(const NormedSpace& space, const std::vector<Vec>& f, const std::vector<Vec>& x,
                    const Tolerances& tol) {
  const int n = space.dim();
  if (static_cast<int>(f.size()) != n || static_cast<int>(x.size()) != n)
    throw InputError("compute_c2: need n functionals and n points");
  for (int i = 0; i < n; ++i) {
    if (f[i].size() != n || x[i].size() != n) throw InputError("compute_c2: wrong dimension at index " + std::to_string(i));
    require_unit(space.dual_norm(f[i], tol), 1.0, tol.eq, "compute_c2: f_" + std::to_string(i) + " is not in S(X*)");
    require_unit(space.norm(x[i], tol), 1.0, tol.eq, "compute_c2: x_" + std::to_string(i) + " is not in S(X)");
    require_unit(f[i].dot(x[i]), 1.0, tol.eq, "compute_c2: f_" + std::to_string(i) + "(x_" + std::to_string(i) + ") != 1");
  }
  C2Result res;
  res.method = "vacuous";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool exact = true;
      const double v = pair_norming_value(space, x[i], x[j], exact, res.method, tol);
      res.exact = res.exact && exact;
      if (res.worst_i < 0 || v > res.worst_pair_value) {
        res.worst_pair_value = v;
        res.worst_i = i;
        res.worst_j = j;
      }
    }
  res.c2 = 1.0 - res.worst_pair_value;
  return res;
}

Theorem1Report theorem1_check(const NormedSpace& space, const std::vector<Vec>& f,
                              const std::vector<Vec>& x, const Certificate& cert, const Tolerances& tol) {
  const int n = space.dim();
  if (cert.dim() != n) throw InputError("theorem1_check: certificate dimension differs from space");
  const VerificationReport ver = verify_certificate(cert, tol);
  if (!ver.valid) throw PreconditionError("theorem1_check: certificate is not valid");
  const C2Result c2 = compute_c2(space, f, x, tol);
  if (c2.c2 <= 0) throw PreconditionError("theorem1_check: c2 <= 0, the hypothesis on the points fails");

  Theorem1Report rep;
  rep.c2 = c2.c2;
  rep.advisory = !c2.exact;
  const Body z = cert.zonotope();
  double worst = 0.0;
  for (const Vec& fi : f) worst = std::max(worst, support(z, fi, tol) - 1.0);
  rep.c1 = worst;
  rep.c3 = 1.0 - (2.0 - rep.c2) / rep.c2 * rep.c1;
  if (rep.c3 <= 0) {
    rep.inconclusive = true;
    return rep;
  }
  Mat rows(n, n);
  for (int i = 0; i < n; ++i) rows.row(i) = f[i].transpose();
  const Mat dual = rows.fullPivLu().inverse();
  rep.worst_gauge = 0.0;
  for (long mask = 0; mask < (1L << (n - 1)); ++mask) {
    Vec s = Vec::Ones(n);
    for (int i = 1; i < n; ++i)
      if ((mask >> (i - 1)) & 1) s(i) = -1.0;
    const Vec vertex = rep.c3 * dual * s;
    const double g = gauge(z, vertex, tol);
    if (g > rep.worst_gauge || rep.witness.size() == 0) {
      rep.worst_gauge = g;
      rep.witness = vertex;
    }
  }
  rep.holds = rep.worst_gauge <= 1.0 + tol.feas;
  return rep;
}

MinimalityReport corollary_minimality_check(const NormedSpace& space, const std::vector<Vec>& f,
                                            const std::vector<Vec>& x, const Tolerances& tol) {
  const int n = space.dim();
  if (static_cast<int>(f.size()) != n || static_cast<int>(x.size()) != n)
    throw InputError("corollary_minimality_check: need n functionals and n points");
  std::vector<Vec> xs;
  for (int i = 0; i < n; ++i) {
    if (space.norm(x[i], tol) > 1.0 + tol.feas)
      throw PreconditionError("corollary_minimality_check: x_" + std::to_string(i) + " is outside B(X)", x[i]);
    const double v = f[i].dot(x[i]);
    require_unit(std::abs(v), 1.0, tol.eq,
                 "corollary_minimality_check: x_" + std::to_string(i) + " is not on the face |f_" + std::to_string(i) + "| = 1");
    xs.push_back(v > 0 ? x[i] : Vec(-x[i]));
  }
  MinimalityReport rep;
  rep.c2 = compute_c2(space, f, xs, tol);
  rep.minimal = rep.c2.c2 > tol.feas;
  rep.margin = std::max(0.0, rep.c2.c2);
  return rep;
}

NormedSpace theorem2_space() {
  Mat a(1, 2);
  a << 1, -1;
  return NormedSpace(Body::intersection(Body::ball(2), Body::hpolytope(a, Vec::Ones(1))));
}

PartitionReport partition_property_check(double eps, int net_size, const Tolerances& tol) {
  if (!(eps > 0 && eps < std::numbers::pi / 4)) throw InputError("partition_property_check: eps must lie in (0, pi/4)");
  if (net_size < 2) throw InputError("partition_property_check: net size must be >= 2");
  PartitionReport rep;
  rep.eps = eps;
  rep.bound = 1.0 - std::tan(eps);
  Vec x1(2), x2(2);
  x1 << std::cos(eps), std::sin(eps);
  x2 << std::sin(eps), std::cos(eps);
  auto margin = [&](const Vec& f) { return rep.bound - std::min(std::abs(f.dot(x1)), std::abs(f.dot(x2))); };

  // Extreme points of B(X*) up to sign: the arc of angles [0, pi/2] and (1, -1).
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < net_size; ++k) {
    const double t = 0.5 * std::numbers::pi * k / (net_size - 1);
    Vec f(2);
    f << std::cos(t), std::sin(t);
    const double m = margin(f);
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.worst_functional = f;
    }
  }
  Vec strip(2);
  strip << 1, -1;
  rep.strip_margin = margin(strip);
  if (rep.strip_margin < rep.worst_margin) {
    rep.worst_margin = rep.strip_margin;
    rep.worst_functional = strip;
  }
  rep.holds = rep.worst_margin >= -tol.feas;

  bool exact = true;
  std::string method;
  rep.exact_max = pair_norming_value(theorem2_space(), x1, x2, exact, method, tol);
  Vec e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  rep.f3_x1 = strip.dot(e1);
  rep.f3_x2 = strip.dot(e2);
  return rep;
}

}  // namespace enlarge
