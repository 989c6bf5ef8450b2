// Canonical systems of basic invariants.
//
// The construction pairs every seed differential with the antiinvariant
// twice: phi(f) = ((f, Delta), Delta), where (f, g) = f(d)g. The map is
// degree-preserving, W-equivariant, self-adjoint for <.,.> and its kernel is
// the ideal generated by positive-degree invariants. Lifting phi to one-forms
// and applying the Euler map eps(sum h_k dx_k) = sum x_k h_k turns a seed
// system h_1..h_n into candidates
//
//     g_i = sum_j x_j phi(d_j h_i),
//
// which are pairwise orthogonal across degrees and span the canonical space.
// Orthogonalizing inside equal-degree blocks yields a system with
// (f_i, f_j) = 0 for i != j and (f_i, f_i) = c_i > 0.
//
// Exactness: the pipeline keeps (f_i, c_i) pairs; unit normalization divides
// by sqrt(c_i) and exists only in the float view.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "canon/groups.hpp"
#include "canon/seeds.hpp"

namespace canon {

/// phi(f) = ((f, delta), delta) under the given metric.
Polynomial phi(const Polynomial& f, const Polynomial& delta, const Metric& metric = {});

/// phi applied to each component.
OneForm phi_tilde(const OneForm& w, const Polynomial& delta, const Metric& metric = {});

/// Euler map: sum_k x_k w_k.
Polynomial epsilon(const OneForm& w);

/// g_i = sum_j x_j phi(d_j h_i). Throws std::runtime_error if a candidate
/// vanishes or the candidates are linearly dependent.
std::vector<Polynomial> candidate_system(const SeedSystem& seeds, const Polynomial& delta,
                                         const Metric& metric = {});

/// Classical Gram-Schmidt under <.,.> without normalization. Candidates must
/// be homogeneous and sorted by degree; only equal-degree vectors interact.
std::vector<Polynomial> gram_schmidt_graded(const std::vector<Polynomial>& cands,
                                            const Metric& metric = {});

enum class Mode { generic, refined };

/// How a system was obtained.
enum class Construction {
  gram_schmidt,      ///< candidates, then graded Gram-Schmidt
  distinct_degrees,  ///< candidates used as-is (all degrees distinct)
  dn_monomial,       ///< D_n, n even: x_1...x_n plus the orthogonal partner
  oracle,            ///< direct PDE solve
  external,          ///< read from a file
};

std::string construction_name(Construction c);
Construction parse_construction(const std::string& name);

struct SystemEntry {
  Polynomial poly;
  int degree = 0;
  Scalar norm;  ///< c_i = <f_i, f_i>
};

struct InvariantSystem {
  GroupSpec group;
  std::vector<SystemEntry> entries;
  Construction provenance = Construction::gram_schmidt;
  bool verified = false;

  std::vector<Polynomial> polys() const;
  std::vector<int> degrees() const;
};

/// Rescales by a nonzero constant: integer coefficients with unit content and
/// a positive leading term over Q, a monic leading term over Q(sqrt5). Float
/// polynomials are returned unchanged.
Polynomial tidy_scale(const Polynomial& p);

/// Builds a system with exact norms from already-orthogonal polynomials,
/// each passed through tidy_scale.
InvariantSystem make_system(const ReflectionGroup& group, std::vector<Polynomial> polys,
                            Construction provenance);

/// Canonical system from a seed system. `delta` overrides the antiinvariant
/// (any nonzero multiple gives the same spans).
InvariantSystem canonical_system(const ReflectionGroup& group, const SeedSystem& seeds,
                                 Mode mode = Mode::generic,
                                 const std::optional<Polynomial>& delta = std::nullopt);

/// True for D_n with even n >= 4, the only irreducible types with a repeated degree.
bool has_repeated_degree(const GroupSpec& spec);

/// Eigenvalue of phi_tilde on d(x_1...x_n) for type D; nullopt if that
/// form is not an eigenvector.
std::optional<Scalar> monomial_eigenvalue(const ReflectionGroup& group,
                                          const std::optional<Polynomial>& delta = std::nullopt);

struct PairingCheck {
  std::size_t i = 0;  ///< 0-based
  std::size_t j = 0;
  Polynomial value{0, Field::rational};  ///< (f_i, f_j)
  bool ok = false;
};

struct VerificationReport {
  std::vector<PairingCheck> pairings;  ///< all ordered pairs
  std::vector<bool> invariant;         ///< per entry, against every generator
  std::vector<bool> norm_positive;     ///< per entry
  std::vector<bool> norm_matches;      ///< stored c_i equals (f_i, f_i)
  bool degrees_ok = false;
  bool passed = false;
  std::vector<std::string> failures;   ///< human-readable, 1-based indices
};

/// Checks every ordered pair (f_i, f_j) as a polynomial: zero off the
/// diagonal, the positive constant c_i on it. Float systems are compared with
/// a relative tolerance.
VerificationReport verify_canonical(const InvariantSystem& sys, const ReflectionGroup& group);

/// f_i / sqrt(c_i) over the float field.
std::vector<Polynomial> float_normalized(const InvariantSystem& sys);

/// Largest deviation of the float-normalized system from (f_i, f_j) = delta_ij,
/// measured coefficientwise.
double normalized_defect(const InvariantSystem& sys, const Metric& metric);

}  // namespace canon
