#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enlarge/body.hpp"

namespace enlarge {

/// One factor of the l_inf factorization: functional f (dual coordinates) and vector y.
struct Pair {
  Vec f;
  Vec y;
};

/// Finite witness that `enlargement` is a sufficient enlargement for `space`:
/// f_j in B(X*), sum_j y_j f_j^T = I, and sum_j [-y_j, y_j] inside the enlargement.
class Certificate {
 public:
  Certificate(NormedSpace space, Body enlargement, std::vector<Pair> pairs);

  const NormedSpace& space() const { return space_; }
  const Body& enlargement() const { return enlargement_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  int dim() const { return space_.dim(); }

  /// Functionals and vectors as columns (n x J).
  Mat functionals() const;
  Mat vectors() const;
  /// sum_j y_j f_j^T.
  Mat reconstruction() const;
  /// Zonotope{y_j}.
  Body zonotope() const;

 private:
  NormedSpace space_;
  Body enlargement_;
  std::vector<Pair> pairs_;
};

struct VerificationReport {
  bool valid = false;
  bool dual_ok = false;
  bool reconstruction_ok = false;
  bool containment_ok = false;
  /// max_j dual norm of f_j, minus 1.
  double dual_excess = 0.0;
  int worst_pair = -1;
  /// ||sum y_j f_j^T - I||_max.
  double reconstruction_residual = 0.0;
  ContainmentResult containment;
  /// B(X) inside the certificate zonotope; implied by the other two, checked independently.
  ContainmentResult unit_ball_inside;
  /// Containment decided on a direction net only.
  bool sampled = false;
};

VerificationReport verify_certificate(const Certificate& cert, const Tolerances& tol = {});

/// Pairs (f_i, dual basis x_i) with enlargement {x : |f_i(x)| <= 1}.
Certificate parallelepiped_certificate(const NormedSpace& space, const std::vector<Vec>& f,
                                       const Tolerances& tol = {});

/// Pairs (f, lambda y) and (f', (1 - lambda) y'); enlargement lambda A1 + (1 - lambda) A2.
Certificate convex_combination(const Certificate& c1, const Certificate& c2, double lambda,
                               const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Quantitative containment

struct C2Result {
  double c2 = 1.0;
  /// False when the pair maxima are sampled lower bounds.
  bool exact = true;
  std::string method;
  int worst_i = -1, worst_j = -1;
  /// max over pairs of max over f in B(X*) of min(|f(x_i)|, |f(x_j)|).
  double worst_pair_value = 0.0;
};

/// c2 = 1 - max_{i<j} max_{f in B(X*)} min(|f(x_i)|, |f(x_j)|).
C2Result compute_c2(const NormedSpace& space, const std::vector<Vec>& f, const std::vector<Vec>& x,
                    const Tolerances& tol = {});

/// max_{f in B(X*)} min(|f(a)|, |f(b)|) for one pair of points.
double pair_norming_value(const NormedSpace& space, const Vec& a, const Vec& b, bool& exact,
                          std::string& method, const Tolerances& tol = {});

struct Theorem1Report {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  bool holds = false;
  /// c3 <= 0: the hypothesis of the theorem is not met.
  bool inconclusive = false;
  /// c2 came from a sampled bound.
  bool advisory = false;
  /// Largest gauge of a parallelepiped vertex in the certificate zonotope.
  double worst_gauge = 0.0;
  Vec witness;
};

Theorem1Report theorem1_check(const NormedSpace& space, const std::vector<Vec>& f,
                              const std::vector<Vec>& x, const Certificate& cert,
                              const Tolerances& tol = {});

struct MinimalityReport {
  bool minimal = false;
  double margin = 0.0;
  C2Result c2;
};

/// Minimality of Q = {|f_i| <= 1} given tangency points x_i on its faces.
MinimalityReport corollary_minimality_check(const NormedSpace& space, const std::vector<Vec>& f,
                                            const std::vector<Vec>& x, const Tolerances& tol = {});

/// The disc intersected with the strip |a1 - a2| <= 1.
NormedSpace theorem2_space();

struct PartitionReport {
  double eps = 0.0;
  double bound = 0.0;  ///< 1 - tan(eps)
  bool holds = false;
  /// min over sampled extreme functionals of bound - min(|f(x1)|, |f(x2)|).
  double worst_margin = 0.0;
  Vec worst_functional;
  /// The same margin restricted to the strip functionals +-(1, -1).
  double strip_margin = 0.0;
  /// Exact max over B(X*) of min(|f(x1)|, |f(x2)|) by minimax duality.
  double exact_max = 0.0;
  /// f3 = (1, -1) evaluated at x1 = (1, 0) and x2 = (0, 1).
  double f3_x1 = 0.0, f3_x2 = 0.0;
};

/// Checks min(|f(x1(eps))|, |f(x2(eps))|) <= 1 - tan(eps) over the extreme points of the
/// dual ball of theorem2_space(), x1 = (cos eps, sin eps), x2 = (sin eps, cos eps).
PartitionReport partition_property_check(double eps, int net_size = 10000, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Prisms

struct AtomDecomposition {
  struct Atom {
    Vec f;
    double coefficient;
  };
  /// Per basis direction i: mass at +h, mass at -h, residual atoms.
  std::vector<double> b1, b2;
  std::vector<std::vector<Atom>> nu;
};

struct PrismResult {
  Certificate certificate;
  AtomDecomposition atoms;
  VerificationReport verification;
  /// Every pair other than the merged one has |h(y_j)| <= tol.eq.
  bool prism_shape = false;
  ContainmentResult inside_input;
};

/// Merges the +-h atoms of a slab-bounded certificate into one pair (h, y_h).
/// basis holds x_2..x_n as columns; h(x1) = 1 and h(x_i) = 0 are required.
PrismResult prismify(const Certificate& cert, const Vec& x1, const Vec& h, const Mat& basis,
                     const Tolerances& tol = {});

}  // namespace enlarge
