#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enlarge/certificate.hpp"

namespace enlarge {

/// Finite subgroup of O(n) given by its elements.
class OrthogonalGroupAction {
 public:
  /// Validates orthogonality, identity and closure under product and inverse.
  explicit OrthogonalGroupAction(std::vector<Mat> elements, const Tolerances& tol = {});
  /// Closure of a generating set (throws if the closure exceeds max_order).
  static OrthogonalGroupAction generated_by(const std::vector<Mat>& generators, const Tolerances& tol = {},
                                            int max_order = 5000);

  int dim() const { return static_cast<int>(elements_.front().rows()); }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<Mat>& elements() const { return elements_; }

 private:
  std::vector<Mat> elements_;
};

namespace groups {
/// Symmetry group of the regular k-gon, order 2k.
OrthogonalGroupAction dihedral(int k);
/// Rotations by multiples of 2 pi / k.
OrthogonalGroupAction cyclic(int k);
/// Signed permutation matrices in 3-D, order 48.
OrthogonalGroupAction octahedral();
/// Full icosahedral group including -I, order 120.
OrthogonalGroupAction icosahedral();
/// "d3".."dK", "c2".."cK", "octahedral", "icosahedral".
OrthogonalGroupAction by_name(const std::string& name);
}  // namespace groups

/// n Gamma(n/2) / (sqrt(pi) Gamma((n+1)/2)).
double lambda_euclidean(int n);

/// ||z|| lambda(n) / n: radius of the Haar average of [-z, z].
double average_segment_radius(const Vec& z);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  int trials = 0;
};

/// Mean of support(body, Q^T a) over Haar-random Q.
MonteCarloEstimate monte_carlo_average_support(const Body& body, const Vec& a, int trials, std::uint64_t seed,
                                               const Tolerances& tol = {});

/// Pairs (g y, (n/|G|) g y) for l_2^n with the orbit zonotope as enlargement.
/// A non-trivial commutant is a HypothesisError unless allow_nontrivial_commutant is set,
/// in which case only the frame identity decides.
Certificate orbit_zonotope(const OrthogonalGroupAction& group, const Vec& y, bool allow_nontrivial_commutant = false,
                           const Tolerances& tol = {});

enum class Smallness { Small, NotSmall, Invalid };
std::string to_string(Smallness s);

struct SmallnessReport {
  double generator_norm_sum = 0.0;
  Smallness verdict = Smallness::Invalid;
  double lambda_n = 0.0;
  int dim = 0;
};

SmallnessReport smallness_check(const Certificate& cert, const Tolerances& tol = {});

/// Certificate for l_2^(n+m) with pairs embedded into coordinate blocks.
/// An empty optional stands for the zero-dimensional space: a is returned unchanged.
Certificate direct_sum(const Certificate& a, const std::optional<Certificate>& b, const Tolerances& tol = {});

/// Space l_1^n, enlargement B(l_2^n), pairs (f, f / 2^(n-1)) over sign vectors with f_n = 1.
Certificate hadamard_certificate(int n);

struct HyperplaneProjection {
  Vec w;  ///< kernel direction, <w, h> = 1
  Mat p;  ///< I - w h^T
  double norm = 0.0;  ///< operator norm on l_inf^n
};

HyperplaneProjection minimal_norm_hyperplane_projection(const Vec& h, const Tolerances& tol = {});

struct Remark2Report {
  HyperplaneProjection projection;
  Body a;  ///< [-h, h] + P(B(l_inf^n))
  Certificate certificate;  ///< pairs (h, w) and (e_j, P e_j)
  VerificationReport verification;
  ContainmentResult a_in_cube3, a_in_slab, z_in_cube3, z_in_slab, z_in_a;
};

Remark2Report remark2_enlargement(const Vec& h, const Tolerances& tol = {});

struct MinVolumeOptions {
  int generators = 4;  ///< N
  int restarts = 100;
  std::uint64_t seed = 1;
  int descent_iterations = 60;
};

struct MinVolumeResult {
  bool found = false;
  std::optional<Certificate> certificate;
  double volume = 0.0;
  /// Volume reached by each restart (NaN for infeasible assignments).
  std::vector<double> history;
  int feasible_restarts = 0;
  /// Euclidean spaces only: volume >= 2^n - tol and sum ||y_j|| >= n - tol.
  bool volume_bound_ok = true;
  bool norm_sum_bound_ok = true;
};

/// Multi-start local search for small-volume certificate zonotopes with functionals from the pool.
MinVolumeResult min_volume_search(const NormedSpace& space, const Mat& pool, const MinVolumeOptions& options,
                                  const Tolerances& tol = {});

/// min over rotations (1 degree grid) of the net Hausdorff distance between a planar body and
/// the square circumscribed about the unit disc.
double hausdorff_to_circumscribed_square(const Body& body, const Tolerances& tol = {});

}  // namespace enlarge
