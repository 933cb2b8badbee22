#pragma once

#include <optional>
#include <vector>

#include "enlarge/numerics.hpp"

namespace enlarge {

/// Dense linear program over `num_vars` variables:
///   eq_matrix x == eq_rhs,  ineq_matrix x <= ineq_rhs,  x_i >= 0 where flagged,
/// optionally minimising objective . x. Variables are free unless flagged.
struct LpProblem {
  int num_vars = 0;
  Mat eq_matrix;
  Vec eq_rhs;
  Mat ineq_matrix;
  Vec ineq_rhs;
  std::vector<bool> nonnegative;  // empty means every variable is free
  std::optional<Vec> objective;

  void validate() const;
  /// Largest violation of the raw constraints at x.
  double max_violation(const Vec& x) const;
};

enum class LpStatus { Feasible, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  double objective = 0.0;
  int iterations = 0;
  double max_violation = 0.0;

  bool feasible() const { return status == LpStatus::Feasible; }
};

/// Two-phase dense tableau simplex (Dantzig pricing, Bland's rule on degenerate
/// stalls) followed by a basis re-solve against the original rows.
LpOutcome solve_lp(const LpProblem& problem, const Tolerances& tol = {});

/// Incremental builder for LPs assembled from sparse rows.
class LpBuilder {
 public:
  using Term = std::pair<int, double>;
  using Row = std::vector<Term>;

  int add_var(bool nonnegative = false);
  std::vector<int> add_vars(int count, bool nonnegative = false);
  int num_vars() const { return static_cast<int>(nonneg_.size()); }

  void add_eq(Row row, double rhs);
  void add_le(Row row, double rhs);
  void add_ge(Row row, double rhs);
  void set_objective(Row row);

  LpProblem build() const;

 private:
  std::vector<bool> nonneg_;
  std::vector<std::pair<Row, double>> eq_, le_;
  std::optional<Row> objective_;
};

}  // namespace enlarge
