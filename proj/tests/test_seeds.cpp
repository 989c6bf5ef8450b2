#include <doctest.h>

#include "support.hpp"

using namespace canon;
using canon::test::group_of;
using canon::test::poly;

TEST_CASE("B2 power sums and their Jacobian") {
  auto g = group_of(GroupType::B, 2);
  SeedSystem s = seed_invariants(g, SeedKind::power_sums);
  REQUIRE(s.size() == 2);
  CHECK(s.polys[0] == poly(2, {{{2, 0}, 1}, {{0, 2}, 1}}));
  CHECK(s.polys[1] == poly(2, {{{4, 0}, 1}, {{0, 4}, 1}}));

  // det [[2x, 2y], [4x^3, 4y^3]]
  Polynomial delta = antiinvariant_delta(g.roots());
  auto cert = jacobian_certificate(s, &delta);
  CHECK(cert.is_independent);
  CHECK(cert.witness == poly(2, {{{1, 3}, 8}, {{3, 1}, -8}}));
  REQUIRE(cert.delta_ratio.has_value());
  CHECK(cert.witness == delta.scaled(*cert.delta_ratio));
}

TEST_CASE("dependent and rank-one certificates") {
  Polynomial q = poly(2, {{{2, 0}, 1}, {{0, 2}, 1}});
  auto cert = jacobian_certificate(std::vector<Polynomial>{q, q * q});
  CHECK_FALSE(cert.is_independent);
  CHECK(cert.witness.is_zero());

  auto b1 = jacobian_certificate(std::vector<Polynomial>{poly(1, {{{2}, 1}})});
  CHECK(b1.is_independent);
  CHECK(b1.witness == poly(1, {{{1}, 2}}));
}

TEST_CASE("polynomial determinant") {
  Polynomial x = Polynomial::variable(2, Field::rational, 0), y = Polynomial::variable(2, Field::rational, 1);
  Polynomial one = Polynomial::constant(2, Field::rational, 1);
  Polynomial zero(2, Field::rational);
  // Vandermonde in (x, y, 1)
  std::vector<std::vector<Polynomial>> v = {{one, x, x * x}, {one, y, y * y}, {one, one, one}};
  CHECK(polynomial_determinant(v) == (y - x) * (one - x) * (one - y));
  CHECK(polynomial_determinant({{x, zero}, {zero, y}}) == x * y);
}

TEST_CASE("D4 seeds contain the coordinate product") {
  auto g = group_of(GroupType::D, 4);
  SeedSystem s = seed_invariants(g);
  CHECK(s.degrees == std::vector<int>{2, 4, 4, 6});
  Polynomial prod = poly(4, {{{1, 1, 1, 1}, 1}});
  CHECK(std::find(s.polys.begin(), s.polys.end(), prod) != s.polys.end());
}

TEST_CASE("H3 Reynolds seeds") {
  auto g = group_of(GroupType::H3, 3);
  SeedSystem s = seed_invariants(g, SeedKind::reynolds);
  CHECK(s.degrees == std::vector<int>{2, 6, 10});
  CHECK(s.provenance == SeedKind::reynolds);
}

TEST_CASE("seed systems are certified for every supported small type") {
  struct Case {
    GroupType t;
    int rank;
    int m = 0;
  };
  for (const auto& c : std::vector<Case>{{GroupType::A, 1}, {GroupType::A, 2}, {GroupType::A, 4}, {GroupType::B, 1},
                                          {GroupType::B, 4}, {GroupType::D, 3}, {GroupType::D, 5}, {GroupType::D, 6},
                                          {GroupType::I2, 2, 3}, {GroupType::I2, 2, 5}, {GroupType::I2, 2, 8},
                                          {GroupType::I2, 2, 10}, {GroupType::H3, 3}, {GroupType::F4, 4}}) {
    auto g = group_of(c.t, c.rank, c.m);
    Polynomial delta = antiinvariant_delta(g.roots());
    for (SeedKind kind : {SeedKind::power_sums, SeedKind::reynolds}) {
      CAPTURE(g.spec().label());
      CAPTURE(seed_kind_name(kind));
      SeedSystem s = seed_invariants(g, kind);
      CHECK(s.degrees == classical_degrees(g.spec()));
      for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(g.is_invariant(s.polys[i]));
        CHECK(s.polys[i].homogeneous_degree() == s.degrees[i]);
      }
      auto cert = jacobian_certificate(s, &delta);
      CHECK(cert.is_independent);
      REQUIRE(cert.delta_ratio.has_value());
      CHECK_FALSE(cert.delta_ratio->is_zero());
    }
  }
}

TEST_CASE("user seeds are validated") {
  auto g = group_of(GroupType::B, 2);
  Polynomial q = poly(2, {{{2, 0}, 1}, {{0, 2}, 1}});
  Polynomial q4 = poly(2, {{{4, 0}, 1}, {{0, 4}, 1}});
  Polynomial x2 = poly(2, {{{2, 0}, 1}});

  SeedSystem ok = user_seeds(g, {q4, q});  // any order
  CHECK(ok.provenance == SeedKind::user);
  CHECK(ok.polys[0] == q);
  CHECK_THROWS_AS(user_seeds(g, {x2, q4}), InvalidSeeds);      // not invariant
  CHECK_THROWS_AS(user_seeds(g, {q, q * q}), InvalidSeeds);    // dependent
  CHECK_THROWS_AS(user_seeds(g, {q}), InvalidSeeds);           // too few
  CHECK_THROWS_AS(user_seeds(g, {q, q4 * q}), InvalidSeeds);   // wrong degree
}
