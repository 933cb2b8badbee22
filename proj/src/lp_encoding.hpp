#pragma once

#include <vector>

#include "enlarge/body.hpp"
#include "enlarge/lp.hpp"

namespace enlarge::detail {

/// Constrain the variables u to lie in t * body (t a non-negative variable).
/// Throws UnsupportedRepresentation when a Euclidean ball is reached.
void encode_membership(LpBuilder& lp, const Body& body, const std::vector<int>& u, int t);

/// Constrain support(body, u) <= t.
void encode_support_le(LpBuilder& lp, const Body& body, const std::vector<int>& u, int t);

/// support and gauge through a single LP.
double lp_support(const Body& body, const Vec& a, const Tolerances& tol);
double lp_gauge(const Body& body, const Vec& x, const Tolerances& tol);

}  // namespace enlarge::detail
