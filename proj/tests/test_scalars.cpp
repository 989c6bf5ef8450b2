#include <doctest.h>

#include <cmath>
#include <random>

#include "canon/matrix.hpp"
#include "canon/scalar.hpp"

using canon::Field;
using canon::Scalar;

TEST_CASE("rational arithmetic stays in lowest terms") {
  CHECK(Scalar(1, 2) + Scalar(1, 3) == Scalar(5, 6));
  Scalar half(2, 4);
  CHECK(half.rational().get_num() == 1);
  CHECK(half.rational().get_den() == 2);
  CHECK((half * Scalar(2)).is_one());
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
}

TEST_CASE("golden ratio times its conjugate inverse is one") {
  Scalar phi = canon::golden_ratio();
  Scalar inv = Scalar::quad(mpq_class(-1, 2), mpq_class(1, 2));
  Scalar prod = phi * inv;
  CHECK(prod.is_one());
  CHECK(prod.is_rational());  // collapses back to Q
  CHECK(phi.inverse() == inv);
}

TEST_CASE("float embedding") {
  CHECK(Scalar(1, 2).to_float() == 0.5);
  CHECK(Scalar(-3).to_float() == -3.0);
  CHECK(std::abs(canon::golden_ratio().to_float() - 1.618033988749895) < 1e-15);
}

TEST_CASE("exact sign of quadratic elements") {
  CHECK(Scalar(3, 2).is_positive());
  CHECK((Scalar(-1) + canon::sqrt5()).is_positive());
  // 49/9 > 5
  Scalar s = Scalar(7, 3) - canon::sqrt5();
  CHECK(s.is_positive());
  CHECK(s.to_float() > 0);
  CHECK((Scalar(9, 4) - canon::sqrt5()).is_positive());
  CHECK_FALSE((Scalar(2) - canon::sqrt5()).is_positive());
  CHECK((Scalar(2) - canon::sqrt5()).is_negative());
}

TEST_CASE("float and exact values do not mix") {
  CHECK_THROWS_AS(Scalar::real(0.5) + Scalar(1, 2), canon::FieldError);
  CHECK_NOTHROW(Scalar(1, 2).in_field(Field::real) + Scalar::real(0.5));
  CHECK_THROWS_AS(canon::sqrt5().in_field(Field::rational), canon::FieldError);
}

TEST_CASE("string round trip") {
  for (const Scalar& s : {Scalar(-7, 3), Scalar(0), Scalar::quad(mpq_class(1, 2), mpq_class(-3, 4)),
                          canon::sqrt5(), Scalar::real(0.1), Scalar::real(-2.5e-17)}) {
    CAPTURE(s.to_string());
    CHECK(Scalar::parse(s.to_string()) == s);
  }
  CHECK(Scalar::parse("1/2+3/4*sqrt5") == Scalar::quad(mpq_class(1, 2), mpq_class(3, 4)));
  CHECK(Scalar::parse("-sqrt5") == -canon::sqrt5());
  CHECK(Scalar::parse("3+sqrt5") == Scalar(3) + canon::sqrt5());
  CHECK_THROWS(Scalar::parse("1/0"));
  CHECK_THROWS(Scalar::parse("abc"));
}

namespace {

Scalar random_exact(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 60);
  Scalar a(num(rng), den(rng));
  if (rng() % 2) a = a + Scalar(num(rng), den(rng)) * canon::sqrt5();
  return a;
}

}  // namespace

TEST_CASE("field axioms on random exact scalars") {
  std::mt19937 rng(11);
  for (int k = 0; k < 1000; ++k) {
    Scalar a = random_exact(rng), b = random_exact(rng), c = random_exact(rng);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) REQUIRE((a * a.inverse()).is_one());
  }
}

TEST_CASE("float embedding is a homomorphism up to rounding") {
  std::mt19937 rng(12);
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); };
  for (int k = 0; k < 1000; ++k) {
    Scalar a = random_exact(rng), b = random_exact(rng);
    double fa = a.to_float(), fb = b.to_float();
    REQUIRE(close((a + b).to_float(), fa + fb));
    REQUIRE(close((a - b).to_float(), fa - fb));
    REQUIRE(close((a * b).to_float(), fa * fb));
    if (std::abs(fb) > 1e-6) REQUIRE(close((a / b).to_float(), fa / fb));
    if (std::abs(fa) > 1e-9) REQUIRE(a.is_positive() == (fa > 0));
  }
}

TEST_CASE("matrix inverse and determinant") {
  canon::Matrix m({{Scalar(2), Scalar(1)}, {Scalar(7), Scalar(4)}}, Field::rational);
  CHECK(m.determinant() == Scalar(1));
  CHECK((m * m.inverse()).is_identity());
  canon::Matrix singular({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}, Field::rational);
  CHECK(singular.determinant().is_zero());
  CHECK(canon::rank(singular) == 1);
  auto ns = canon::nullspace(singular);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] + Scalar(2) * ns[0][1] == Scalar(0));
}
