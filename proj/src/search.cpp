#include "enlarge/search.hpp"

#include <cmath>
#include <numbers>

namespace enlarge {

std::string to_string(PoolTag tag) {
  switch (tag) {
    case PoolTag::DualVertex: return "dual-vertex";
    case PoolTag::Orbit: return "orbit";
    case PoolTag::RandomExtreme: return "random-extreme";
    case PoolTag::User: return "user";
  }
  return "user";
}

std::string to_string(SearchStatus s) {
  return s == SearchStatus::Found ? "found" : "not-found-within-budget";
}

void FunctionalPool::add(Vec f, PoolTag tag) {
  functionals.push_back(std::move(f));
  tags.push_back(tag);
}

FunctionalPool FunctionalPool::head(std::size_t k) const {
  FunctionalPool p;
  for (std::size_t i = 0; i < std::min(k, size()); ++i) p.add(functionals[i], tags[i]);
  return p;
}

namespace {

struct Components {
  std::vector<Vec> rows;  // polyhedral pieces of B(X*), up to sign
  bool needs_net = false;
};

void push_unique(std::vector<Vec>& rows, const Vec& r) {
  for (const Vec& q : rows)
    if ((q - r).cwiseAbs().maxCoeff() <= 1e-12 || (q + r).cwiseAbs().maxCoeff() <= 1e-12) return;
  rows.push_back(r);
}

void collect(const Body& b, double factor, Components& out, const Tolerances& tol) {
  if (auto h = as<HPolytope>(b)) {
    for (Eigen::Index k = 0; k < h->normals.rows(); ++k)
      push_unique(out.rows, Vec(h->normals.row(k).transpose() / (h->offsets(k) * factor)));
    return;
  }
  if (auto s = as<Scaled>(b)) return collect(s->inner, factor * s->factor, out, tol);
  if (auto i = as<IntersectionPair>(b)) {
    collect(i->left, factor, out, tol);
    collect(i->right, factor, out, tol);
    return;
  }
  if (is_polyhedral(b)) {
    if (auto f = facets(b, tol)) {
      for (Eigen::Index k = 0; k < f->normals.rows(); ++k)
        push_unique(out.rows, Vec(f->normals.row(k).transpose() / (f->offsets(k) * factor)));
      return;
    }
  }
  out.needs_net = true;
}

Mat net_directions(int n, int count) {
  if (n == 2) {
    Mat m(2, count);
    for (int k = 0; k < count; ++k) {
      const double t = 2 * std::numbers::pi * k / count;
      m.col(k) << std::cos(t), std::sin(t);
    }
    return m;
  }
  return make_direction_net(n, count);
}

struct Rows {
  Mat a;  // K x n
  Vec b;
  bool exact = true;
};

std::optional<Rows> exact_rows(const Body& target, const Tolerances& tol) {
  if (auto h = as<HPolytope>(target)) return Rows{h->normals, h->offsets, true};
  if (!is_polyhedral(target)) return std::nullopt;
  auto f = facets(target, tol);
  if (!f) return std::nullopt;
  return Rows{f->normals, f->offsets, true};
}

// Symmetric net rows (one direction per antipodal pair). At level > 0 the net is doubled and
// the offsets shrunk by cos(delta), delta the covering angle of the net.
Rows sampled_rows(const Body& target, int level, const Tolerances& tol) {
  const int n = target.dim();
  Mat u;
  double delta;
  if (n == 2) {
    const int count = 48 << level;
    u.resize(2, count);
    for (int k = 0; k < count; ++k) {
      const double t = std::numbers::pi * k / count;
      u.col(k) << std::cos(t), std::sin(t);
    }
    delta = std::numbers::pi / (2 * count);
  } else {
    const int count = (n == 3 ? 150 : 40 * n) << level;
    u = make_direction_net(n, count);
    const Mat probe = make_direction_net(n, 2000, 0x9e3779b9ULL);
    double worst = 1.0;
    for (Eigen::Index p = 0; p < probe.cols(); ++p)
      worst = std::min(worst, (u.transpose() * probe.col(p)).cwiseAbs().maxCoeff());
    delta = std::acos(std::clamp(worst, -1.0, 1.0));
  }
  Rows r{u.transpose(), Vec(u.cols()), false};
  const double shrink = level > 0 ? std::cos(delta) : 1.0;
  for (Eigen::Index k = 0; k < u.cols(); ++k) r.b(k) = support(target, u.col(k), tol) * shrink;
  return r;
}

struct Assembly {
  LpBuilder lp;
  std::vector<std::vector<int>> y;  // y[j][r]
};

// Reconstruction and zonotope containment rows; objective terms are left to the caller.
// Returns the t variables so that sum_k t_jk can be used as an objective.
std::vector<int> build_core(Assembly& as, const std::vector<Vec>& f, const Rows& rows) {
  const int n = static_cast<int>(f.front().size());
  const int N = static_cast<int>(f.size());
  for (int j = 0; j < N; ++j) as.y.push_back(as.lp.add_vars(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      LpBuilder::Row row;
      for (int j = 0; j < N; ++j)
        if (f[j](c) != 0.0) row.emplace_back(as.y[j][r], f[j](c));
      as.lp.add_eq(std::move(row), r == c ? 1.0 : 0.0);
    }
  std::vector<int> all_t;
  for (Eigen::Index k = 0; k < rows.a.rows(); ++k) {
    LpBuilder::Row sum;
    for (int j = 0; j < N; ++j) {
      const int t = as.lp.add_var(true);
      all_t.push_back(t);
      LpBuilder::Row plus{{t, -1.0}}, minus{{t, -1.0}};
      for (int r = 0; r < n; ++r) {
        plus.emplace_back(as.y[j][r], rows.a(k, r));
        minus.emplace_back(as.y[j][r], -rows.a(k, r));
      }
      as.lp.add_le(std::move(plus), 0.0);
      as.lp.add_le(std::move(minus), 0.0);
      sum.emplace_back(t, 1.0);
    }
    as.lp.add_le(std::move(sum), rows.b(k));
  }
  return all_t;
}

std::vector<Pair> read_pairs(const Assembly& as, const std::vector<Vec>& f, const LpOutcome& out) {
  std::vector<Pair> pairs;
  for (std::size_t j = 0; j < f.size(); ++j) {
    Vec y(f[j].size());
    for (Eigen::Index r = 0; r < y.size(); ++r) y(r) = out.x(as.y[j][r]);
    if (y.cwiseAbs().maxCoeff() > 1e-13) pairs.push_back({f[j], y});
  }
  return pairs;
}

}  // namespace

FunctionalPool default_pool(const NormedSpace& space, int budget, const Tolerances& tol) {
  const int n = space.dim();
  if (budget < n) throw InputError("default_pool: budget " + std::to_string(budget) + " is below the dimension");
  Components comp;
  collect(space.unit_ball(), 1.0, comp, tol);
  const int rows = static_cast<int>(comp.rows.size());
  FunctionalPool pool;
  const bool both_signs = 2 * rows + (comp.needs_net ? 2 : 0) <= budget;
  if (!both_signs && rows + (comp.needs_net ? 2 : 0) > budget)
    throw InputError("default_pool: budget " + std::to_string(budget) + " is below the " + std::to_string(rows) +
                     " functionals needed to norm the space");
  for (const Vec& r : comp.rows) {
    const Vec f = r / space.dual_norm(r, tol);
    pool.add(f, PoolTag::DualVertex);
    if (both_signs) pool.add(-f, PoolTag::DualVertex);
  }
  if (comp.needs_net) {
    const Mat u = net_directions(n, budget - static_cast<int>(pool.size()));
    for (Eigen::Index k = 0; k < u.cols(); ++k) pool.add(u.col(k) / space.dual_norm(u.col(k), tol), PoolTag::RandomExtreme);
  }
  Mat m(n, static_cast<Eigen::Index>(pool.size()));
  for (std::size_t j = 0; j < pool.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = pool.functionals[j];
  Eigen::FullPivLU<Mat> lu(m);
  lu.setThreshold(tol.rank);
  if (lu.rank() < n) throw InputError("default_pool: pool does not span the dual space");
  return pool;
}

FunctionalPool user_pool(const NormedSpace& space, const std::vector<Vec>& functionals, PoolTag tag,
                         const Tolerances& tol) {
  FunctionalPool pool;
  for (std::size_t j = 0; j < functionals.size(); ++j) {
    if (functionals[j].size() != space.dim())
      throw InputError("user_pool: functional " + std::to_string(j) + " has the wrong dimension");
    if (space.dual_norm(functionals[j], tol) > 1.0 + tol.feas)
      throw InputError("user_pool: functional " + std::to_string(j) + " lies outside B(X*)");
    pool.add(functionals[j], tag);
  }
  return pool;
}

SearchResult find_certificate(const NormedSpace& space, const Body& enlargement, const FunctionalPool& pool,
                              int generators, const Tolerances& tol) {
  const int n = space.dim();
  if (enlargement.dim() != n) throw InputError("find_certificate: enlargement dimension differs from space");
  if (generators < 0) throw InputError("find_certificate: generator budget must be >= 0");
  if (pool.size() == 0) throw InputError("find_certificate: empty pool");
  const std::size_t count = generators == 0 ? pool.size() : std::min<std::size_t>(generators, pool.size());
  std::vector<Vec> f(pool.functionals.begin(), pool.functionals.begin() + static_cast<std::ptrdiff_t>(count));
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j].size() != n) throw InputError("find_certificate: pool entry " + std::to_string(j) + " has the wrong dimension");
    if (space.dual_norm(f[j], tol) > 1.0 + tol.feas)
      throw InputError("find_certificate: pool entry " + std::to_string(j) + " lies outside B(X*)");
  }
  const ContainmentResult pre = contains_body(space.unit_ball(), enlargement, tol);
  if (!pre.contained)
    throw PreconditionError("find_certificate: enlargement does not contain B(X), no certificate can exist", pre.witness);

  SearchResult res;
  res.diagnostics.generators = static_cast<int>(count);
  const std::optional<Rows> exact = exact_rows(enlargement, tol);
  for (int level = 0; level < (exact ? 1 : 2); ++level) {
    const Rows rows = exact ? *exact : sampled_rows(enlargement, level, tol);
    Assembly as;
    const std::vector<int> t = build_core(as, f, rows);
    LpBuilder::Row obj;
    for (int v : t) obj.emplace_back(v, 1.0);
    as.lp.set_objective(std::move(obj));
    const LpProblem prob = as.lp.build();
    SearchDiagnostics& d = res.diagnostics;
    d.lp_variables = prob.num_vars;
    d.lp_rows = static_cast<int>(prob.eq_rhs.size() + prob.ineq_rhs.size());
    d.containment_rows = static_cast<int>(rows.a.rows());
    d.exact_rows = rows.exact;
    d.refinements = level;
    const LpOutcome out = solve_lp(prob, tol);
    d.lp_status = out.status;
    if (!out.feasible()) {
      d.message = "containment LP infeasible for this pool";
      return res;
    }
    Certificate cert(space, enlargement, read_pairs(as, f, out));
    const VerificationReport ver = verify_certificate(cert, tol);
    d.reconstruction_residual = ver.reconstruction_residual;
    d.containment_slack = ver.containment.worst_slack;
    if (ver.valid) {
      res.status = SearchStatus::Found;
      res.certificate.emplace(std::move(cert));
      res.verification = ver;
      d.message = "certificate verified";
      return res;
    }
    d.message = "candidate rejected by verification";
  }
  return res;
}

Certificate tighten_certificate(const Certificate& cert, TightenObjective objective,
                                const std::vector<Vec>& directions, const Tolerances& tol) {
  const int n = cert.dim();
  if (!verify_certificate(cert, tol).valid) throw PreconditionError("tighten_certificate: input certificate is not valid");
  if (objective == TightenObjective::SupportAt && directions.empty())
    throw InputError("tighten_certificate: support objective needs at least one direction");
  for (const Vec& u : directions)
    if (u.size() != n) throw InputError("tighten_certificate: direction of wrong dimension");

  std::vector<Vec> f;
  for (const Pair& p : cert.pairs()) f.push_back(p.f);
  const std::optional<Rows> exact = exact_rows(cert.enlargement(), tol);
  const Rows rows = exact ? *exact : sampled_rows(cert.enlargement(), 1, tol);
  Assembly as;
  build_core(as, f, rows);
  LpBuilder::Row obj;
  auto value = [&](const Certificate& c) {
    double v = 0;
    if (objective == TightenObjective::SupportAt) {
      const Body z = c.zonotope();
      for (const Vec& u : directions) v += support(z, u, tol);
    } else {
      for (const Pair& p : c.pairs()) v += p.y.norm();
    }
    return v;
  };
  if (objective == TightenObjective::SupportAt) {
    for (const Vec& u : directions)
      for (std::size_t j = 0; j < f.size(); ++j) {
        const int s = as.lp.add_var(true);
        LpBuilder::Row plus{{s, -1.0}}, minus{{s, -1.0}};
        for (int r = 0; r < n; ++r) {
          plus.emplace_back(as.y[j][r], u(r));
          minus.emplace_back(as.y[j][r], -u(r));
        }
        as.lp.add_le(std::move(plus), 0.0);
        as.lp.add_le(std::move(minus), 0.0);
        obj.emplace_back(s, 1.0);
      }
  } else {
    const Mat u = net_directions(n, n == 2 ? 128 : 100 * n);
    for (std::size_t j = 0; j < f.size(); ++j) {
      const int s = as.lp.add_var(true);
      for (Eigen::Index k = 0; k < u.cols(); ++k) {
        LpBuilder::Row row{{s, -1.0}};
        for (int r = 0; r < n; ++r) row.emplace_back(as.y[j][r], u(r, k));
        as.lp.add_le(std::move(row), 0.0);
      }
      obj.emplace_back(s, 1.0);
    }
  }
  as.lp.set_objective(std::move(obj));
  const LpOutcome out = solve_lp(as.lp.build(), tol);
  if (!out.feasible()) return cert;
  Certificate tightened(cert.space(), cert.enlargement(), read_pairs(as, f, out));
  if (!verify_certificate(tightened, tol).valid) return cert;
  if (value(tightened) > value(cert)) return cert;
  return tightened;
}

}  // namespace enlarge
