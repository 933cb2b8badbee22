#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enlarge/certificate.hpp"
#include "enlarge/lp.hpp"

namespace enlarge {

enum class PoolTag { DualVertex, Orbit, RandomExtreme, User };
std::string to_string(PoolTag tag);

/// Finite family of functionals in B(X*).
struct FunctionalPool {
  std::vector<Vec> functionals;
  std::vector<PoolTag> tags;

  void add(Vec f, PoolTag tag);
  std::size_t size() const { return functionals.size(); }
  /// Prefix of the first k entries.
  FunctionalPool head(std::size_t k) const;
};

/// Dual vertices for polytopal balls, equally spaced or quasi-uniform unit functionals
/// for Euclidean balls, and the union of factor components for intersections.
/// Every entry is rescaled onto S(X*). Throws InputError when budget cannot norm X.
FunctionalPool default_pool(const NormedSpace& space, int budget, const Tolerances& tol = {});

/// Wraps user functionals, rejecting entries with dual norm > 1 + feas.
FunctionalPool user_pool(const NormedSpace& space, const std::vector<Vec>& functionals, PoolTag tag = PoolTag::User,
                         const Tolerances& tol = {});

enum class SearchStatus { Found, NotFoundWithinBudget };
std::string to_string(SearchStatus s);

struct SearchDiagnostics {
  int lp_variables = 0;
  int lp_rows = 0;
  int generators = 0;
  int containment_rows = 0;
  bool exact_rows = true;
  int refinements = 0;
  LpStatus lp_status = LpStatus::Infeasible;
  double reconstruction_residual = 0.0;
  double containment_slack = 0.0;
  std::string message;
};

struct SearchResult {
  SearchStatus status = SearchStatus::NotFoundWithinBudget;
  std::optional<Certificate> certificate;
  std::optional<VerificationReport> verification;
  SearchDiagnostics diagnostics;

  bool found() const { return status == SearchStatus::Found; }
};

/// One LP over y_j for the first N pool functionals (N = 0 uses the whole pool) with
/// containment rows sum_j |<a_k, y_j>| <= b_k. Exact rows for polyhedral enlargements,
/// net rows otherwise; every candidate is re-verified and a failed sampled solve is retried
/// once on a finer, shrunk net. Throws PreconditionError (with witness) when the
/// enlargement misses part of B(X).
SearchResult find_certificate(const NormedSpace& space, const Body& enlargement, const FunctionalPool& pool,
                              int generators = 0, const Tolerances& tol = {});

enum class TightenObjective { SupportAt, NormSum };

/// Re-optimises y over the certificate's own functionals and enlargement. SupportAt minimises
/// sum_d support(Z, u_d); NormSum minimises sum_j ||y_j||_2 through a polyhedral net
/// approximation. Returns the input when the result would not verify or not improve.
Certificate tighten_certificate(const Certificate& cert, TightenObjective objective,
                                const std::vector<Vec>& directions = {}, const Tolerances& tol = {});

}  // namespace enlarge
