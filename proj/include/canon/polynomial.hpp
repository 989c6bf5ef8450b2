// Sparse multivariate polynomials over a Scalar field, the two apolar
// pairings, linear substitution, and one-forms.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "canon/matrix.hpp"
#include "canon/scalar.hpp"

namespace canon {

inline constexpr std::size_t kMaxVars = 8;

/// Dense exponent vector; unused trailing slots stay zero.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::initializer_list<int> exps);
  explicit Monomial(const std::vector<int>& exps);
  static Monomial unit(std::size_t var);

  int operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, int e);
  int degree() const { return degree_; }

  /// True if every exponent of *this is <= the matching exponent of o.
  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  /// o must divide *this.
  Monomial operator/(const Monomial& o) const;

  std::vector<int> exponents(std::size_t num_vars) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  /// Graded lexicographic: higher degree first, then lexicographically larger
  /// exponent vector first.
  friend bool graded_lex_before(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kMaxVars> exps_{};
  std::uint16_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

class ContextError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Polynomial {
 public:
  using TermMap = std::unordered_map<Monomial, Scalar, MonomialHash>;

  Polynomial(std::size_t num_vars, Field field);

  static Polynomial constant(std::size_t num_vars, Field field, const Scalar& c);
  static Polynomial variable(std::size_t num_vars, Field field, std::size_t var);
  static Polynomial monomial(std::size_t num_vars, Field field, const Monomial& m,
                             const Scalar& c);
  /// Linear form sum_j coeffs[j] x_j.
  static Polynomial linear_form(Field field, const std::vector<Scalar>& coeffs);

  std::size_t num_vars() const { return num_vars_; }
  Field field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Largest total degree; -1 for the zero polynomial.
  int degree() const;
  /// Common degree of all terms; nullopt for the zero polynomial or mixed degrees.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }

  Scalar coefficient(const Monomial& m) const;
  /// The constant term (the value at the origin).
  Scalar constant_term() const { return coefficient(Monomial{}); }

  void add_term(const Monomial& m, const Scalar& c);

  /// Terms in graded-lex order (see graded_lex_before).
  std::vector<std::pair<Monomial, Scalar>> sorted_terms() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator-() const;
  Polynomial scaled(const Scalar& c) const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(int e) const;

  /// Same polynomial with coefficients converted into `field`.
  Polynomial in_field(Field field) const;

  /// Largest |coefficient| under the float embedding.
  double max_abs_coefficient() const;
  /// Drops float terms below rel_tol * max|coef|; identity on exact fields.
  Polynomial chopped(double rel_tol = 1e-12) const;
  /// Exact equality for exact fields; coefficientwise relative comparison
  /// for float.
  bool approx_equal(const Polynomial& o, double rel_tol = kFloatTolerance) const;

  /// Value at a point (exact when point and coefficients are exact).
  Scalar evaluate(const std::vector<Scalar>& point) const;

  std::string to_string() const;

 private:
  std::size_t num_vars_;
  Field field_;
  TermMap terms_;
};

void require_compatible(const Polynomial& a, const Polynomial& b);

/// Formal partial derivative in variable j (0-based).
Polynomial partial(const Polynomial& f, std::size_t j);

/// f(d)g: f with x_j replaced by d/dx_j, applied to g.
Polynomial apply_diff(const Polynomial& f, const Polynomial& g);

/// <f, g> = f(d)g at x = 0.
Scalar apolar_inner(const Polynomial& f, const Polynomial& g);

/// Rows are the polynomials, columns the union of their monomials in
/// graded-lex order (returned in `monomials` when requested).
Matrix coefficient_matrix(const std::vector<Polynomial>& polys,
                          std::vector<Monomial>* monomials = nullptr);

/// f(Mx): each x_i becomes sum_j M(i,j) x_j.
Polynomial substitute_linear(const Polynomial& f, const Matrix& m);

/// Euclidean structure used by the pairings. In an orthonormal frame it is
/// the identity and the pairings are the plain ones above. In a general basis
/// with Gram matrix G the W-invariant pairing is f(G^-1 d)g.
class Metric {
 public:
  Metric() = default;  // identity
  explicit Metric(Matrix gram);

  bool is_identity() const { return !gram_.has_value(); }
  const Matrix& gram() const { return *gram_; }
  const Matrix& inverse_gram() const { return *inverse_gram_; }
  /// Gram matrix, or the identity of the given size.
  Matrix gram_or_identity(std::size_t n, Field field) const;

  /// f(G^-1 d)g.
  Polynomial apply(const Polynomial& f, const Polynomial& g) const;
  Scalar inner(const Polynomial& f, const Polynomial& g) const;
  /// f with its variables replaced by G^-1 x: the operator used by apply.
  Polynomial raise(const Polynomial& f) const;
  /// B(u, v) = u^T G v.
  Scalar bilinear(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const;

 private:
  std::optional<Matrix> gram_;
  std::optional<Matrix> inverse_gram_;
};

/// Element of S (x) V*: component j is the coefficient of dx_j.
class OneForm {
 public:
  explicit OneForm(std::vector<Polynomial> components);
  static OneForm zero(std::size_t num_vars, Field field);

  std::size_t num_vars() const { return components_.size(); }
  const Polynomial& operator[](std::size_t j) const { return components_[j]; }
  const std::vector<Polynomial>& components() const { return components_; }
  bool is_zero() const;
  std::optional<int> homogeneous_degree() const;

  OneForm scaled(const Scalar& c) const;
  friend bool operator==(const OneForm& a, const OneForm& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<Polynomial> components_;
};

/// dh = sum_j (d_j h) dx_j.
OneForm differential(const Polynomial& f);

/// sum_{j,k} (G^-1)_{jk} <g_j, h_k>_G; reduces to sum_j <g_j, h_j> for the
/// identity metric.
Scalar oneform_inner(const OneForm& a, const OneForm& b, const Metric& metric = {});

}  // namespace canon
