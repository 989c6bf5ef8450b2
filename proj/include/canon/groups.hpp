// Root systems and finite reflection groups: construction, enumeration, the
// antiinvariant product of root forms, and invariant averaging.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "canon/matrix.hpp"
#include "canon/polynomial.hpp"

namespace canon {

enum class GroupType { A, B, D, I2, H3, H4, F4, E6, E7, E8 };

/// Field selection for a group context; `automatic` picks the smallest field
/// that holds the root data.
enum class FieldChoice { automatic, rational, sqrt5, real };

FieldChoice parse_field_choice(const std::string& text);

class UnsupportedGroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Identifies a group and the field it is realized over.
struct GroupSpec {
  GroupType type = GroupType::A;
  int rank = 1;
  int m = 0;  ///< dihedral parameter, I2 only
  Field field = Field::rational;

  /// Resolves and validates a request. Throws UnsupportedGroup for unknown
  /// or out-of-scope (type, rank) pairs; H4 and E6 need `allow_opt_in`.
  static GroupSpec make(GroupType type, int rank, int m = 0,
                        FieldChoice field = FieldChoice::automatic, bool allow_opt_in = false);

  /// "B3", "I2(6)", ...
  std::string label() const;
  /// "A", "B", "D", "I2", "H", "F", "E".
  std::string type_letter() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Parses "A", "B3", "I2", "H3", "E", ... into a type; `rank` completes
/// families given by their letter only.
GroupType parse_group_type(const std::string& text, int rank);

/// Degrees m_1 <= ... <= m_n of any system of basic invariants.
std::vector<int> classical_degrees(const GroupSpec& spec);
/// Order of the group, from the classification tables.
std::size_t classical_order(const GroupSpec& spec);
/// Number of positive roots.
std::size_t classical_positive_root_count(const GroupSpec& spec);

using Vector = std::vector<Scalar>;

struct RootSystem {
  GroupSpec spec;
  /// Inner product in the chosen coordinates; identity for the standard
  /// orthonormal models (B, D, F4, H3, H4), the Gram matrix of the simple
  /// roots otherwise.
  Metric metric;
  std::vector<Vector> simple_roots;
  std::vector<Vector> positive_roots;

  std::size_t rank() const { return simple_roots.size(); }
  Field field() const { return spec.field; }
};

RootSystem build_root_system(const GroupSpec& spec);

/// s(x) = x - 2 B(x, a)/B(a, a) a.
Matrix reflection_matrix(const Vector& root, const Metric& metric, Field field);

struct GroupElement {
  Matrix matrix;
  int det = 1;
};

std::size_t default_group_cap();  ///< 52000, or $CANON_MAX_GROUP_ORDER

class ReflectionGroup {
 public:
  explicit ReflectionGroup(RootSystem roots);
  static ReflectionGroup build(const GroupSpec& spec) { return ReflectionGroup(build_root_system(spec)); }

  const RootSystem& roots() const { return roots_; }
  const GroupSpec& spec() const { return roots_.spec; }
  const Metric& metric() const { return roots_.metric; }
  std::size_t rank() const { return roots_.rank(); }
  Field field() const { return roots_.field(); }
  const std::vector<Matrix>& generators() const { return generators_; }

  bool enumerated() const { return elements_.has_value(); }
  /// Breadth-first closure of the generators; throws CapExceeded when the
  /// group is larger than `cap`. Idempotent.
  const std::vector<GroupElement>& enumerate(std::size_t cap = default_group_cap());
  /// Throws std::logic_error when not enumerated.
  const std::vector<GroupElement>& elements() const;

  /// Polynomials of this context.
  Polynomial zero() const { return Polynomial(rank(), field()); }
  Polynomial variable(std::size_t j) const { return Polynomial::variable(rank(), field(), j); }
  /// The invariant quadratic form B(x, x).
  Polynomial norm_form() const;

  /// True if g.f == f for every generator g.
  bool is_invariant(const Polynomial& f) const;

 private:
  RootSystem roots_;
  std::vector<Matrix> generators_;
  std::optional<std::vector<GroupElement>> elements_;
};

/// (w.f)(x) = f(w^-1 x).
Polynomial act(const Matrix& w, const Polynomial& f);

/// Root form L_a(x) = B(a, x).
Polynomial root_form(const Vector& root, const Metric& metric, Field field);

/// Product of the root forms over the positive roots.
Polynomial antiinvariant_delta(const RootSystem& rs);

/// (1/|W|) sum_w w.f over the enumerated group.
Polynomial reynolds(const Polynomial& f, const ReflectionGroup& group);

/// Reynolds image of l^d for the linear form l(x) = coeffs . x, computed as
/// the average over the orbit of l (no enumeration needed).
Polynomial orbit_power_average(const Vector& coeffs, int d, const ReflectionGroup& group);

}  // namespace canon
