#include "enlarge/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace enlarge {

void LpProblem::validate() const {
  if (num_vars < 0) throw InputError("LP: negative variable count");
  if (eq_matrix.size() > 0 && eq_matrix.cols() != num_vars)
    throw InputError("LP: equality matrix column count != variable count");
  if (ineq_matrix.size() > 0 && ineq_matrix.cols() != num_vars)
    throw InputError("LP: inequality matrix column count != variable count");
  if (eq_matrix.rows() != eq_rhs.size()) throw InputError("LP: equality rhs size mismatch");
  if (ineq_matrix.rows() != ineq_rhs.size()) throw InputError("LP: inequality rhs size mismatch");
  if (!nonnegative.empty() && static_cast<int>(nonnegative.size()) != num_vars)
    throw InputError("LP: nonnegativity flags size mismatch");
  if (objective && objective->size() != num_vars) throw InputError("LP: objective size mismatch");
  if (!eq_matrix.allFinite() || !ineq_matrix.allFinite() || !eq_rhs.allFinite() ||
      !ineq_rhs.allFinite() || (objective && !objective->allFinite()))
    throw InputError("LP: non-finite data");
}

double LpProblem::max_violation(const Vec& x) const {
  double worst = 0.0;
  if (eq_rhs.size() > 0) worst = std::max(worst, (eq_matrix * x - eq_rhs).cwiseAbs().maxCoeff());
  if (ineq_rhs.size() > 0) worst = std::max(worst, (ineq_matrix * x - ineq_rhs).maxCoeff());
  for (std::size_t i = 0; i < nonnegative.size(); ++i)
    if (nonnegative[i]) worst = std::max(worst, -x(static_cast<Eigen::Index>(i)));
  return worst;
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;

struct IterationLimit {};

/// Tableau: rows 0..m-1 constraints, row m reduced costs; column N is the rhs.
class Tableau {
 public:
  Tableau(Mat t, std::vector<int> basis, int max_iterations)
      : t_(std::move(t)), basis_(std::move(basis)), max_iterations_(max_iterations) {
    m_ = static_cast<int>(t_.rows()) - 1;
    n_ = static_cast<int>(t_.cols()) - 1;
  }

  Mat& data() { return t_; }
  const std::vector<int>& basis() const { return basis_; }
  int rows() const { return m_; }
  int cols() const { return n_; }

  void pivot(int p, int q) {
    const double piv = t_(p, q);
    t_.row(p) /= piv;
    Vec col = t_.col(q);
    col(p) = 0.0;
    Eigen::RowVectorXd prow = t_.row(p);
    t_.noalias() -= col * prow;
    t_.col(q).setZero();
    t_(p, q) = 1.0;
    basis_[p] = q;
  }

  /// Minimise the cost row over columns with allowed[j]. Returns false if unbounded.
  bool optimise(const std::vector<bool>& allowed, int& iterations) {
    int degenerate_run = 0;
    while (true) {
      if (++iterations > max_iterations_) throw IterationLimit();
      const bool bland = degenerate_run > 30;
      int q = -1;
      double best = -kCostTol;
      for (int j = 0; j < n_; ++j) {
        if (!allowed[j]) continue;
        const double d = t_(m_, j);
        if (d < best) {
          q = j;
          if (bland) break;
          best = d;
        }
      }
      if (q < 0) return true;
      int p = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double a = t_(i, q);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(0.0, t_(i, n_)) / a;
        if (p < 0 || ratio < best_ratio - 1e-12) {
          p = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12) {
          if (bland ? basis_[i] < basis_[p] : a > t_(p, q)) {
            p = i;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (p < 0) return false;
      degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(p, q);
    }
  }

 private:
  Mat t_;
  std::vector<int> basis_;
  int max_iterations_;
  int m_ = 0, n_ = 0;
};


// With `perturb` the tableau runs on a slightly shifted rhs, which breaks degenerate ties;
// the final basis re-solve against the true rhs removes the shift.
LpOutcome solve_impl(const LpProblem& problem, const Tolerances& tol, bool perturb, int max_iterations) {
  const int nv = problem.num_vars;
  const int meq = static_cast<int>(problem.eq_rhs.size());
  const int mle = static_cast<int>(problem.ineq_rhs.size());
  const int m = meq + mle;

  // Column map: each free variable becomes (plus, minus).
  std::vector<int> plus(nv), minus(nv, -1);
  int ncols = 0;
  for (int i = 0; i < nv; ++i) {
    plus[i] = ncols++;
    const bool nonneg = !problem.nonnegative.empty() && problem.nonnegative[i];
    if (!nonneg) minus[i] = ncols++;
  }
  const int slack0 = ncols;
  ncols += mle;

  // Standard-form rows with non-negative rhs.
  Mat a = Mat::Zero(m, ncols);
  Vec b(m);
  auto fill = [&](int r, const auto& src, double rhs) {
    for (int i = 0; i < nv; ++i) {
      a(r, plus[i]) = src(i);
      if (minus[i] >= 0) a(r, minus[i]) = -src(i);
    }
    b(r) = rhs;
  };
  for (int r = 0; r < meq; ++r) fill(r, problem.eq_matrix.row(r), problem.eq_rhs(r));
  for (int r = 0; r < mle; ++r) {
    fill(meq + r, problem.ineq_matrix.row(r), problem.ineq_rhs(r));
    a(meq + r, slack0 + r) = 1.0;
  }
  for (int r = 0; r < m; ++r) {
    const double scale = std::max(a.row(r).cwiseAbs().maxCoeff(), std::abs(b(r)));
    if (scale > 0) {
      a.row(r) /= scale;
      b(r) /= scale;
    }
    if (b(r) < 0) {
      a.row(r) = -a.row(r);
      b(r) = -b(r);
    }
  }

  // Rows whose slack has +1 start basic on the slack; others get an artificial.
  std::vector<int> basis(m, -1);
  std::vector<int> artificial_rows;
  for (int r = meq; r < m; ++r)
    if (a(r, slack0 + (r - meq)) > 0) basis[r] = slack0 + (r - meq);
  for (int r = 0; r < m; ++r)
    if (basis[r] < 0) artificial_rows.push_back(r);
  const int nart = static_cast<int>(artificial_rows.size());
  const int total = ncols + nart;

  Mat t = Mat::Zero(m + 1, total + 1);
  t.block(0, 0, m, ncols) = a;
  t.block(0, total, m, 1) = b;
  if (perturb)
    for (int r = 0; r < m; ++r) t(r, total) += 1e-10 * (1.0 + static_cast<double>((r * 7919) % 97) / 97.0);
  for (int k = 0; k < nart; ++k) {
    const int r = artificial_rows[k];
    t(r, ncols + k) = 1.0;
    basis[r] = ncols + k;
  }

  LpOutcome out;
  Tableau tab(std::move(t), basis, max_iterations);
  Mat& td = tab.data();

  std::vector<bool> allowed(total, true);
  if (nart > 0) {
    // Phase 1: minimise the sum of artificials.
    for (int k = 0; k < nart; ++k) td.row(m) -= td.row(artificial_rows[k]);
    for (int k = 0; k < nart; ++k) td(m, ncols + k) = 0.0;
    tab.optimise(allowed, out.iterations);
    const double infeas = -td(m, total);
    if (infeas > tol.feas) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive remaining artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (tab.basis()[r] < ncols) continue;
      int q = -1;
      double best = 1e-9;
      for (int j = 0; j < ncols; ++j)
        if (std::abs(td(r, j)) > best) {
          best = std::abs(td(r, j));
          q = j;
        }
      if (q >= 0) tab.pivot(r, q);
    }
    for (int k = 0; k < nart; ++k) allowed[ncols + k] = false;
  }

  // Phase 2 cost row.
  td.row(m).setZero();
  if (problem.objective) {
    const Vec& c = *problem.objective;
    for (int i = 0; i < nv; ++i) {
      td(m, plus[i]) = c(i);
      if (minus[i] >= 0) td(m, minus[i]) = -c(i);
    }
    for (int r = 0; r < m; ++r) {
      const int j = tab.basis()[r];
      const double cj = td(m, j);
      if (cj != 0.0) td.row(m) -= cj * td.row(r);
    }
    if (!tab.optimise(allowed, out.iterations)) {
      out.status = LpStatus::Unbounded;
      return out;
    }
  }

  // Extract, then re-solve the basis system against the unscaled tableau rows.
  Vec z = Vec::Zero(total);
  for (int r = 0; r < m; ++r) z(tab.basis()[r]) = std::max(0.0, td(r, total));
  auto to_x = [&](const Vec& zz) {
    Vec x(nv);
    for (int i = 0; i < nv; ++i) x(i) = zz(plus[i]) - (minus[i] >= 0 ? zz(minus[i]) : 0.0);
    return x;
  };
  Vec x = to_x(z);
  double viol = problem.max_violation(x);
  if ((perturb || viol > 1e-13) && m > 0 && m <= 2500) {
    Mat basis_matrix(m, m);
    for (int r = 0; r < m; ++r) {
      const int j = tab.basis()[r];
      if (j < ncols)
        basis_matrix.col(r) = a.col(j);
      else {
        basis_matrix.col(r).setZero();
        basis_matrix(artificial_rows[j - ncols], r) = 1.0;
      }
    }
    Eigen::PartialPivLU<Mat> lu(basis_matrix);
    Vec zb = lu.solve(b);
    if (zb.allFinite()) {
      Vec z2 = Vec::Zero(total);
      for (int r = 0; r < m; ++r) z2(tab.basis()[r]) = std::max(0.0, zb(r));
      Vec x2 = to_x(z2);
      const double viol2 = problem.max_violation(x2);
      if (viol2 < viol) {
        x = x2;
        viol = viol2;
      }
    }
  }
  out.status = LpStatus::Feasible;
  out.x = x;
  out.max_violation = viol;
  out.objective = problem.objective ? problem.objective->dot(x) : 0.0;
  return out;
}

}  // namespace

LpOutcome solve_lp(const LpProblem& problem, const Tolerances& tol) {
  problem.validate();
  const int size = static_cast<int>(problem.eq_rhs.size() + problem.ineq_rhs.size()) + 2 * problem.num_vars;
  try {
    return solve_impl(problem, tol, false, std::max(5000, 20 * size));
  } catch (const IterationLimit&) {
  }
  try {
    return solve_impl(problem, tol, true, 200000);
  } catch (const IterationLimit&) {
    throw std::runtime_error("LP: iteration limit reached");
  }
}

int LpBuilder::add_var(bool nonnegative) {
  nonneg_.push_back(nonnegative);
  return static_cast<int>(nonneg_.size()) - 1;
}

std::vector<int> LpBuilder::add_vars(int count, bool nonnegative) {
  std::vector<int> ids(count);
  for (int i = 0; i < count; ++i) ids[i] = add_var(nonnegative);
  return ids;
}

void LpBuilder::add_eq(Row row, double rhs) { eq_.emplace_back(std::move(row), rhs); }
void LpBuilder::add_le(Row row, double rhs) { le_.emplace_back(std::move(row), rhs); }
void LpBuilder::add_ge(Row row, double rhs) {
  for (auto& term : row) term.second = -term.second;
  le_.emplace_back(std::move(row), -rhs);
}
void LpBuilder::set_objective(Row row) { objective_ = std::move(row); }

LpProblem LpBuilder::build() const {
  LpProblem p;
  p.num_vars = num_vars();
  p.nonnegative = nonneg_;
  auto dense = [&](const std::vector<std::pair<Row, double>>& rows, Mat& mat, Vec& rhs) {
    mat = Mat::Zero(static_cast<Eigen::Index>(rows.size()), p.num_vars);
    rhs.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [var, coef] : rows[r].first) mat(static_cast<Eigen::Index>(r), var) += coef;
      rhs(static_cast<Eigen::Index>(r)) = rows[r].second;
    }
  };
  dense(eq_, p.eq_matrix, p.eq_rhs);
  dense(le_, p.ineq_matrix, p.ineq_rhs);
  if (objective_) {
    Vec c = Vec::Zero(p.num_vars);
    for (const auto& [var, coef] : *objective_) c(var) += coef;
    p.objective = c;
  }
  return p;
}

}  // namespace enlarge
