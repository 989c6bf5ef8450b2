// Brute-force canonical systems: solve the annihilation conditions
// f_prev(d) f = 0 directly on graded spaces of invariants. Shares only the
// polynomial and group layers with the main construction.
#pragma once

#include <vector>

#include "canon/canonical.hpp"
#include "canon/groups.hpp"

namespace canon {

struct GradedInvariantBasis {
  int degree = 0;
  std::vector<Polynomial> basis;
  std::size_t dimension() const { return basis.size(); }
};

/// Basis of the degree-d invariants: Reynolds images of all degree-d
/// monomials reduced by exact elimination. Enumerates the group on demand;
/// throws CapExceeded when the monomial count exceeds `max_monomials`.
GradedInvariantBasis invariant_basis(ReflectionGroup& group, int d,
                                     std::size_t max_monomials = 20000);

/// Coefficients of prod_i 1/(1 - t^{m_i}) up to t^max_degree.
std::vector<long> hilbert_series(const std::vector<int>& degrees, int max_degree);

/// Canonical system built degree by degree from the PDE conditions.
InvariantSystem flatto_solve(ReflectionGroup& group);

/// Per-degree span equality of two systems (exact rank test).
bool same_graded_spans(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b);
inline bool same_graded_spans(const InvariantSystem& a, const InvariantSystem& b) {
  return same_graded_spans(a.polys(), b.polys());
}

}  // namespace canon
