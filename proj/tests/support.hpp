// Shared helpers for the unit and acceptance tests.
#pragma once

#include <random>
#include <utility>
#include <vector>

#include "canon/canonical.hpp"
#include "canon/groups.hpp"
#include "canon/polynomial.hpp"

namespace canon::test {

using Term = std::pair<std::vector<int>, Scalar>;

inline Polynomial poly(std::size_t n, std::initializer_list<Term> terms, Field field = Field::rational) {
  Polynomial p(n, field);
  for (const auto& [e, c] : terms) p.add_term(Monomial(e), c.in_field(field));
  return p;
}

inline GroupSpec spec_of(GroupType t, int rank, int m = 0) {
  return GroupSpec::make(t, rank, m, FieldChoice::automatic, true);
}

inline ReflectionGroup group_of(GroupType t, int rank, int m = 0) {
  return ReflectionGroup::build(spec_of(t, rank, m));
}

// Small exact coefficients, occasionally with a sqrt5 part.
inline Scalar random_scalar(std::mt19937& rng, Field field) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  Scalar c(num(rng), den(rng));
  if (field == Field::sqrt5 && rng() % 3 == 0) c = c + Scalar(num(rng), den(rng)) * sqrt5();
  if (field == Field::real) return Scalar::real(c.to_float());
  return c.in_field(field);
}

inline std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, std::size_t var, int left) -> void {
    if (var + 1 == n) {
      e[var] = left;
      out.emplace_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

// Homogeneous of degree d with up to `terms` random terms (never zero).
inline Polynomial random_homogeneous(std::mt19937& rng, std::size_t n, int d, Field field, int terms = 4) {
  auto monos = monomials_of_degree(n, d);
  Polynomial p(n, field);
  while (p.is_zero()) {
    for (int k = 0; k < terms; ++k) {
      Scalar c = random_scalar(rng, field);
      p.add_term(monos[rng() % monos.size()], c);
    }
  }
  return p;
}

inline const GroupElement& random_element(std::mt19937& rng, ReflectionGroup& g) {
  const auto& els = g.enumerate();
  return els[rng() % els.size()];
}

// Both nonzero and linearly dependent.
inline bool proportional(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return false;
  return rank(coefficient_matrix({a, b})) == 1;
}

}  // namespace canon::test
