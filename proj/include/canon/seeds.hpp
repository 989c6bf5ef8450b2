// Arbitrary systems of basic invariants: the input the canonical construction
// transforms, plus an algebraic-independence certificate.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "canon/groups.hpp"

namespace canon {

enum class SeedKind { power_sums, reynolds, user };

std::string seed_kind_name(SeedKind kind);

class InvalidSeeds : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeedSystem {
  std::vector<Polynomial> polys;  ///< sorted by degree
  std::vector<int> degrees;
  SeedKind provenance = SeedKind::power_sums;

  std::size_t size() const { return polys.size(); }
};

/// Whether `kind` has a closed form for this type (power sums exist for A, B,
/// D and, via the norm form, I2). Reynolds always works.
bool has_power_sums(const GroupSpec& spec);

/// Default seed system. Power sums fall back to Reynolds averages where no
/// closed form exists. Throws InvalidSeeds if no independent system is found.
SeedSystem seed_invariants(const ReflectionGroup& group, SeedKind kind = SeedKind::power_sums);

/// Validates user-supplied polynomials (invariance, degrees, independence) and
/// returns them as a degree-sorted seed system.
SeedSystem user_seeds(const ReflectionGroup& group, std::vector<Polynomial> polys);

/// det of a square matrix of polynomials (Laplace expansion over column subsets).
Polynomial polynomial_determinant(const std::vector<std::vector<Polynomial>>& m);

struct JacobianCertificate {
  bool is_independent = false;
  Polynomial witness{0, Field::rational};  ///< det[d_j h_i]
  /// Set when is_independent and a reference antiinvariant was supplied:
  /// witness == ratio * delta.
  std::optional<Scalar> delta_ratio;
};

JacobianCertificate jacobian_certificate(const std::vector<Polynomial>& polys,
                                         const Polynomial* delta = nullptr);
inline JacobianCertificate jacobian_certificate(const SeedSystem& seeds,
                                                const Polynomial* delta = nullptr) {
  return jacobian_certificate(seeds.polys, delta);
}

/// Power sums of the coordinates of the permutation model of A_n, written in
/// the simple-root coordinates used for A_n: p_k, k = 2..n+1.
std::vector<Polynomial> type_a_power_sums(std::size_t n, Field field);

}  // namespace canon
