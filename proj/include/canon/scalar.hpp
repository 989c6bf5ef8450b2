// Exact coefficient arithmetic: rationals, the quadratic field Q(sqrt5), and a
// double-precision fallback for groups whose root data leaves both.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace canon {

/// Coefficient field of a computation context.
enum class Field { rational, sqrt5, real };

std::string field_name(Field f);  // "Q", "Q(sqrt5)", "float"
Field parse_field(std::string_view name);

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a + b*sqrt5 with rational components.
struct QuadExt {
  mpq_class a;
  mpq_class b;
};

/// Tolerance used when the float backend has to decide equality or sign.
inline constexpr double kFloatTolerance = 1e-9;

class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(long v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : value_(mpq_class(v)) {}   // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class q);
  Scalar(long num, long den);
  static Scalar quad(mpq_class a, mpq_class b);
  static Scalar real(double v);

  /// The value 1, 0, or an integer in the variant family of `field`.
  static Scalar from_int(long v, Field field);

  bool is_rational() const { return value_.index() == 0; }
  bool is_quad() const { return value_.index() == 1; }
  bool is_real() const { return value_.index() == 2; }
  bool is_exact() const { return !is_real(); }

  const mpq_class& rational() const;
  /// Rational part a of a + b*sqrt5 (for Rational values the value itself).
  mpq_class quad_a() const;
  mpq_class quad_b() const;
  double real_value() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_positive() const;
  bool is_negative() const { return !is_zero() && !is_positive(); }
  double to_float() const;

  /// Value converted into `field`. Exact-to-float is always allowed; float
  /// cannot be converted back.
  Scalar in_field(Field field) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Float values compare equal when within kFloatTolerance relative error.
  bool approx_equal(const Scalar& o, double tol = kFloatTolerance) const;

  std::size_t hash() const;

  std::string to_string() const;
  static Scalar parse(std::string_view text);

 private:
  using Storage = std::variant<mpq_class, QuadExt, double>;
  explicit Scalar(Storage s) : value_(std::move(s)) {}
  void collapse();

  Storage value_;
};

/// sqrt(5) as a Q(sqrt5) element.
Scalar sqrt5();
/// Golden ratio (1 + sqrt5)/2.
Scalar golden_ratio();

}  // namespace canon
