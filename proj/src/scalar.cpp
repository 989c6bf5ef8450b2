#include "canon/scalar.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <system_error>

namespace canon {
namespace {

constexpr double kSqrt5 = 2.2360679774997896964;

mpq_class make_q(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class parse_rational(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::string text(s);
  if (text.front() == '+') text.erase(0, 1);
  auto slash = text.find('/');
  mpz_class num, den = 1;
  if (num.set_str(text.substr(0, slash), 10) != 0)
    throw std::invalid_argument("bad rational literal '" + std::string(s) + "'");
  if (slash != std::string::npos && den.set_str(text.substr(slash + 1), 10) != 0)
    throw std::invalid_argument("bad rational literal '" + std::string(s) + "'");
  if (den == 0) throw std::domain_error("zero denominator in '" + std::string(s) + "'");
  return make_q(num, den);
}

// sign of a + b*sqrt5, decided exactly.
int quad_sign(const mpq_class& a, const mpq_class& b) {
  int sa = sgn(a);
  int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with 5 b^2
  mpq_class lhs = a * a;
  mpq_class rhs = 5 * b * b;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;  // unreachable for rationals, sqrt5 is irrational
  return c > 0 ? sa : sb;
}

[[noreturn]] void mismatch() {
  throw FieldError("mixing float and exact scalars");
}

}  // namespace

std::string field_name(Field f) {
  switch (f) {
    case Field::rational: return "Q";
    case Field::sqrt5: return "Q(sqrt5)";
    case Field::real: return "float";
  }
  return "?";
}

Field parse_field(std::string_view name) {
  if (name == "Q") return Field::rational;
  if (name == "Q(sqrt5)" || name == "Qsqrt5") return Field::sqrt5;
  if (name == "float") return Field::real;
  throw std::invalid_argument("unknown field '" + std::string(name) + "'");
}

Scalar::Scalar(mpq_class q) : value_(std::move(q)) {
  std::get<mpq_class>(value_).canonicalize();
}

Scalar::Scalar(long num, long den) {
  if (den == 0) throw std::domain_error("division by zero");
  value_ = make_q(num, den);
}

Scalar Scalar::quad(mpq_class a, mpq_class b) {
  a.canonicalize();
  b.canonicalize();
  Scalar s{Storage{QuadExt{std::move(a), std::move(b)}}};
  s.collapse();
  return s;
}

Scalar Scalar::real(double v) { return Scalar{Storage{v}}; }

Scalar Scalar::from_int(long v, Field field) {
  if (field == Field::real) return real(static_cast<double>(v));
  return Scalar(v);
}

void Scalar::collapse() {
  if (auto* q = std::get_if<QuadExt>(&value_); q && q->b == 0) {
    mpq_class a = std::move(q->a);
    value_ = std::move(a);
  }
}

const mpq_class& Scalar::rational() const {
  if (!is_rational()) throw FieldError("scalar is not rational");
  return std::get<mpq_class>(value_);
}

mpq_class Scalar::quad_a() const {
  if (is_rational()) return std::get<mpq_class>(value_);
  if (is_quad()) return std::get<QuadExt>(value_).a;
  mismatch();
}

mpq_class Scalar::quad_b() const {
  if (is_rational()) return 0;
  if (is_quad()) return std::get<QuadExt>(value_).b;
  mismatch();
}

double Scalar::real_value() const { return to_float(); }

bool Scalar::is_zero() const {
  switch (value_.index()) {
    case 0: return sgn(std::get<mpq_class>(value_)) == 0;
    case 1: return false;  // collapsed when b == 0, and a + b*sqrt5 != 0 for b != 0
    default: return std::get<double>(value_) == 0.0;
  }
}

bool Scalar::is_one() const {
  return is_rational() && std::get<mpq_class>(value_) == 1;
}

bool Scalar::is_positive() const {
  switch (value_.index()) {
    case 0: return sgn(std::get<mpq_class>(value_)) > 0;
    case 1: {
      const auto& q = std::get<QuadExt>(value_);
      return quad_sign(q.a, q.b) > 0;
    }
    default: return std::get<double>(value_) > 0.0;
  }
}

double Scalar::to_float() const {
  switch (value_.index()) {
    case 0: return std::get<mpq_class>(value_).get_d();
    case 1: {
      const auto& q = std::get<QuadExt>(value_);
      return q.a.get_d() + q.b.get_d() * kSqrt5;
    }
    default: return std::get<double>(value_);
  }
}

Scalar Scalar::in_field(Field field) const {
  if (field == Field::real) return real(to_float());
  if (is_real()) throw FieldError("cannot convert a float scalar to an exact field");
  if (field == Field::rational && is_quad())
    throw FieldError("value " + to_string() + " is not rational");
  return *this;
}

Scalar Scalar::operator-() const {
  switch (value_.index()) {
    case 0: return Scalar{Storage{mpq_class(-std::get<mpq_class>(value_))}};
    case 1: {
      const auto& q = std::get<QuadExt>(value_);
      return Scalar{Storage{QuadExt{-q.a, -q.b}}};
    }
    default: return real(-std::get<double>(value_));
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_rational() && o.is_rational()) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
    return *this;
  }
  if (is_real() || o.is_real()) {
    if (!(is_real() && o.is_real())) mismatch();
    std::get<double>(value_) += std::get<double>(o.value_);
    return *this;
  }
  *this = quad(quad_a() + o.quad_a(), quad_b() + o.quad_b());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_rational() && o.is_rational()) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
    return *this;
  }
  return *this += -o;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_rational() && o.is_rational()) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
    return *this;
  }
  if (is_real() || o.is_real()) {
    if (!(is_real() && o.is_real())) mismatch();
    std::get<double>(value_) *= std::get<double>(o.value_);
    return *this;
  }
  mpq_class a = quad_a(), b = quad_b();
  mpq_class c = o.quad_a(), d = o.quad_b();
  *this = quad(a * c + 5 * b * d, a * d + b * c);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  switch (value_.index()) {
    case 0: return Scalar{Storage{mpq_class(1 / std::get<mpq_class>(value_))}};
    case 1: {
      // 1/(a + b s) = (a - b s)/(a^2 - 5 b^2)
      const auto& q = std::get<QuadExt>(value_);
      mpq_class norm = q.a * q.a - 5 * q.b * q.b;
      return quad(q.a / norm, -q.b / norm);
    }
    default: return real(1.0 / std::get<double>(value_));
  }
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (is_rational() && o.is_rational()) {
    std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
    return *this;
  }
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.value_.index() != b.value_.index()) {
    if (a.is_real() || b.is_real()) return false;
    return false;  // Rational vs collapsed QuadExt with b != 0
  }
  switch (a.value_.index()) {
    case 0: return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
    case 1: {
      const auto& p = std::get<QuadExt>(a.value_);
      const auto& q = std::get<QuadExt>(b.value_);
      return p.a == q.a && p.b == q.b;
    }
    default: return std::get<double>(a.value_) == std::get<double>(b.value_);
  }
}

bool Scalar::approx_equal(const Scalar& o, double tol) const {
  if (is_exact() && o.is_exact()) return *this == o;
  double x = to_float(), y = o.to_float();
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= tol * scale;
}

std::size_t Scalar::hash() const {
  switch (value_.index()) {
    case 0: {
      const auto& q = std::get<mpq_class>(value_);
      return std::hash<double>{}(q.get_d()) ^ (mpz_sizeinbase(q.get_num_mpz_t(), 2) << 1);
    }
    case 1: {
      const auto& q = std::get<QuadExt>(value_);
      return std::hash<double>{}(q.a.get_d()) * 31 + std::hash<double>{}(q.b.get_d());
    }
    default: return std::hash<double>{}(std::get<double>(value_));
  }
}

std::string Scalar::to_string() const {
  switch (value_.index()) {
    case 0: return std::get<mpq_class>(value_).get_str();
    case 1: {
      const auto& q = std::get<QuadExt>(value_);
      std::string out = q.a.get_str();
      out += sgn(q.b) < 0 ? "-" : "+";
      mpq_class mag = abs(q.b);
      out += mag.get_str();
      out += "*sqrt5";
      return out;
    }
    default: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
      return std::string(buf, res.ptr);
    }
  }
}

Scalar Scalar::parse(std::string_view input) {
  if (input.empty()) throw std::invalid_argument("empty scalar literal");
  // a bare "sqrt5" term has the implicit coefficient 1
  std::string owned(input);
  const std::string bare = "sqrt5";
  if (owned.size() >= bare.size() && owned.ends_with(bare)) {
    std::size_t at = owned.size() - bare.size();
    if (at == 0 || owned[at - 1] != '*') owned.insert(at, "1*");
  }
  std::string_view text = owned;
  const std::string_view suffix = "*sqrt5";
  if (text.size() > suffix.size() && text.substr(text.size() - suffix.size()) == suffix) {
    std::string_view body = text.substr(0, text.size() - suffix.size());
    // split at the last sign that is not the leading one
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
      if (body[i] == '+' || body[i] == '-') {
        split = i;
        break;
      }
    }
    if (split == std::string_view::npos) return quad(0, parse_rational(body));
    mpq_class a = parse_rational(body.substr(0, split));
    mpq_class b = parse_rational(body.substr(split + 1));
    if (body[split] == '-') b = -b;
    return quad(a, b);
  }
  bool looks_float = text.find_first_of(".eEn") != std::string_view::npos;
  if (looks_float) {
    double v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      throw std::invalid_argument("bad float literal '" + std::string(text) + "'");
    return real(v);
  }
  return Scalar(parse_rational(text));
}

Scalar sqrt5() { return Scalar::quad(0, 1); }

Scalar golden_ratio() { return Scalar::quad(mpq_class(1, 2), mpq_class(1, 2)); }

}  // namespace canon
