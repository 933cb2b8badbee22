#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_main.hpp"

#include "enlarge/lp.hpp"

using namespace enlarge;

TEST_CASE("one-variable box") {
  LpBuilder lp;
  const int x = lp.add_var();
  lp.add_ge({{x, 1.0}}, 1.0);
  lp.add_le({{x, 1.0}}, 2.0);
  lp.set_objective({{x, 1.0}});
  const LpOutcome out = solve_lp(lp.build());
  REQUIRE(out.feasible());
  CHECK(out.x(0) == doctest::Approx(1.0));
}

TEST_CASE("empty box is infeasible") {
  LpBuilder lp;
  const int x = lp.add_var();
  lp.add_ge({{x, 1.0}}, 1.0);
  lp.add_le({{x, 1.0}}, 0.0);
  CHECK(solve_lp(lp.build()).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded objective") {
  LpBuilder lp;
  const int x = lp.add_var(true);
  lp.set_objective({{x, -1.0}});
  CHECK(solve_lp(lp.build()).status == LpStatus::Unbounded);
}

TEST_CASE("dimension mismatch is an input error") {
  LpProblem p;
  p.num_vars = 2;
  p.eq_matrix = Mat::Ones(1, 3);
  p.eq_rhs = Vec::Ones(1);
  CHECK_THROWS_AS(solve_lp(p), InputError);
}

TEST_CASE("biorthogonal reconstruction with cube facets") {
  // y_1 e_1^T + y_2 e_2^T = I and sum_j |<e_k, y_j>| <= 1.
  LpBuilder lp;
  auto y = lp.add_vars(4);
  auto t = lp.add_vars(4, true);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) lp.add_eq({{y[2 * c + r], 1.0}}, r == c ? 1.0 : 0.0);
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) {
      lp.add_le({{y[2 * j + k], 1.0}, {t[2 * k + j], -1.0}}, 0.0);
      lp.add_le({{y[2 * j + k], -1.0}, {t[2 * k + j], -1.0}}, 0.0);
    }
    lp.add_le({{t[2 * k], 1.0}, {t[2 * k + 1], 1.0}}, 1.0);
  }
  const LpProblem p = lp.build();
  const LpOutcome out = solve_lp(p);
  REQUIRE(out.feasible());
  CHECK(out.x.head(4).isApprox(Vec((Vec(4) << 1, 0, 0, 1).finished())));
  CHECK(p.max_violation(out.x) <= 1e-9);
}

TEST_CASE("random feasible LPs respect raw constraints") {
  Rng rng(42);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 5, m = 2 * n + 3;
    Vec x0(n);
    for (auto& v : x0) v = g(rng);
    LpProblem p;
    p.num_vars = n;
    p.ineq_matrix = Mat(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) p.ineq_matrix(i, j) = g(rng);
    p.ineq_rhs = p.ineq_matrix * x0 + Vec::Constant(m, 0.5);
    p.eq_matrix = Mat(1, n);
    for (int j = 0; j < n; ++j) p.eq_matrix(0, j) = g(rng);
    p.eq_rhs = p.eq_matrix * x0;
    Vec c(n);
    for (auto& v : c) v = g(rng);
    p.objective = c;
    const LpOutcome out = solve_lp(p);
    if (out.status == LpStatus::Unbounded) continue;
    REQUIRE(out.feasible());
    CHECK(p.max_violation(out.x) <= 1e-9);
    CHECK(out.objective <= c.dot(x0) + 1e-9);
  }
}
