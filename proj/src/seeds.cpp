#include "canon/seeds.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace canon {
namespace {

// Points used to certify independence of gradients; chosen off every
// reflecting hyperplane of the supported models.
std::vector<std::vector<Scalar>> test_points(std::size_t n, Field field) {
  static const long a[] = {3, 7, 17, 41, 103, 251, 613, 1499};
  static const long b[] = {5, -2, 11, -23, 47, -97, 193, -389};
  std::vector<std::vector<Scalar>> pts(2);
  for (std::size_t i = 0; i < n; ++i) {
    pts[0].push_back(Scalar(a[i], 2).in_field(field));
    pts[1].push_back(Scalar(b[i], 3).in_field(field));
  }
  return pts;
}

// Rank of the gradients of `polys` at `point`.
std::size_t gradient_rank(const std::vector<Polynomial>& polys, const std::vector<Scalar>& point) {
  if (polys.empty()) return 0;
  const std::size_t n = polys.front().num_vars();
  const Field field = polys.front().field();
  Matrix m(polys.size(), n, field);
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = partial(polys[i], j).evaluate(point);
  return rank(m);
}

bool gradients_independent(const std::vector<Polynomial>& polys) {
  if (polys.empty()) return true;
  for (const auto& p : test_points(polys.front().num_vars(), polys.front().field()))
    if (gradient_rank(polys, p) == polys.size()) return true;
  return false;
}

// Deterministic retry sequence of linear forms: x1, x1+x2, ..., x1+..+xn,
// x1+2x2, x1+2x2+3x3, ..., then a few sparse generic forms.
std::vector<Vector> candidate_forms(std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t k = 1; k <= n; ++k) {
    Vector v(n, Scalar(0));
    for (std::size_t i = 0; i < k; ++i) v[i] = Scalar(1);
    out.push_back(v);
  }
  for (std::size_t k = 2; k <= n; ++k) {
    Vector v(n, Scalar(0));
    for (std::size_t i = 0; i < k; ++i) v[i] = Scalar(static_cast<long>(i + 1));
    out.push_back(v);
  }
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  for (std::size_t shift = 0; shift < 3; ++shift) {
    Vector v(n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) v[i] = Scalar(primes[(i + shift) % 8] * (i % 2 ? -1 : 1));
    out.push_back(v);
  }
  for (std::size_t i = 1; i < n; ++i) out.push_back([&] {
      Vector v(n, Scalar(0));
      v[i] = Scalar(1);
      return v;
    }());
  return out;
}

Polynomial power_sum(std::size_t n, Field field, int k) {
  Polynomial p(n, field);
  for (std::size_t j = 0; j < n; ++j) {
    Monomial m;
    m.set(j, k);
    p.add_term(m, Scalar::from_int(1, field));
  }
  return p;
}

// Fills missing degrees (slots without a polynomial) with orbit averages of
// powers of linear forms, retrying until the gradients stay independent.
void complete_with_reynolds(const ReflectionGroup& group, const std::vector<int>& degrees,
                            std::vector<std::optional<Polynomial>>& slots) {
  const auto forms = candidate_forms(group.rank());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (slots[i]) continue;
    std::vector<Polynomial> chosen;
    for (std::size_t k = 0; k < i; ++k)
      if (slots[k]) chosen.push_back(*slots[k]);
    bool found = false;
    for (const auto& form : forms) {
      Polynomial h = orbit_power_average(form, degrees[i], group);
      if (h.is_zero()) continue;
      chosen.push_back(h);
      if (gradients_independent(chosen)) {
        slots[i] = std::move(h);
        found = true;
        break;
      }
      chosen.pop_back();
    }
    if (!found)
      throw InvalidSeeds("no independent Reynolds seed of degree " + std::to_string(degrees[i]) +
                         " for " + group.spec().label() + " after exhausting the retry sequence");
  }
}

void certify(const ReflectionGroup& group, const SeedSystem& seeds) {
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!group.is_invariant(seeds.polys[i]))
      throw InvalidSeeds("seed " + std::to_string(i + 1) + " is not invariant");
    auto deg = seeds.polys[i].homogeneous_degree();
    if (!deg || *deg != seeds.degrees[i])
      throw InvalidSeeds("seed " + std::to_string(i + 1) + " is not homogeneous of degree " +
                         std::to_string(seeds.degrees[i]));
  }
  if (!gradients_independent(seeds.polys)) {
    // the pointwise test is only sufficient; settle it symbolically
    if (!jacobian_certificate(seeds).is_independent)
      throw InvalidSeeds("seed system for " + group.spec().label() + " is algebraically dependent");
  }
}

}  // namespace

std::string seed_kind_name(SeedKind kind) {
  switch (kind) {
    case SeedKind::power_sums: return "power-sum";
    case SeedKind::reynolds: return "reynolds";
    case SeedKind::user: return "user-supplied";
  }
  return "?";
}

bool has_power_sums(const GroupSpec& spec) {
  return spec.type == GroupType::A || spec.type == GroupType::B || spec.type == GroupType::D ||
         spec.type == GroupType::I2;
}

std::vector<Polynomial> type_a_power_sums(std::size_t n, Field field) {
  // point sum_i x_i alpha_i has permutation coordinates t_k = x_k - x_{k-1}
  std::vector<Polynomial> t;
  for (std::size_t k = 0; k <= n; ++k) {
    Polynomial tk(n, field);
    if (k < n) tk += Polynomial::variable(n, field, k);
    if (k > 0) tk -= Polynomial::variable(n, field, k - 1);
    t.push_back(std::move(tk));
  }
  std::vector<Polynomial> out;
  for (std::size_t k = 2; k <= n + 1; ++k) {
    Polynomial p(n, field);
    for (const auto& tk : t) p += tk.pow(static_cast<int>(k));
    out.push_back(std::move(p));
  }
  return out;
}

SeedSystem seed_invariants(const ReflectionGroup& group, SeedKind kind) {
  const GroupSpec& spec = group.spec();
  const std::size_t n = group.rank();
  const Field field = group.field();
  SeedSystem seeds;
  seeds.degrees = classical_degrees(spec);
  std::vector<std::optional<Polynomial>> slots(seeds.degrees.size());

  if (kind == SeedKind::user) throw std::invalid_argument("use user_seeds for user-supplied seeds");
  bool closed_form = kind == SeedKind::power_sums && has_power_sums(spec);
  seeds.provenance = closed_form ? SeedKind::power_sums : SeedKind::reynolds;
  if (closed_form) {
    switch (spec.type) {
      case GroupType::A: {
        auto ps = type_a_power_sums(n, field);
        for (std::size_t i = 0; i < ps.size(); ++i) slots[i] = ps[i];
        break;
      }
      case GroupType::B:
        for (std::size_t i = 0; i < n; ++i) slots[i] = power_sum(n, field, 2 * static_cast<int>(i + 1));
        break;
      case GroupType::D: {
        // degrees are sorted; the product x1...xn takes the last slot of degree n
        Polynomial prod = Polynomial::monomial(n, field, Monomial(std::vector<int>(n, 1)),
                                               Scalar::from_int(1, field));
        std::size_t prod_slot = 0;
        for (std::size_t i = 0; i < seeds.degrees.size(); ++i)
          if (seeds.degrees[i] == static_cast<int>(n)) prod_slot = i;
        int next_power = 2;
        for (std::size_t i = 0; i < seeds.degrees.size(); ++i) {
          if (i == prod_slot) {
            slots[i] = prod;
          } else {
            slots[i] = power_sum(n, field, next_power);
            next_power += 2;
          }
        }
        break;
      }
      case GroupType::I2:
        slots[0] = group.norm_form();
        break;
      default: break;
    }
  }
  complete_with_reynolds(group, seeds.degrees, slots);
  for (auto& s : slots) seeds.polys.push_back(std::move(*s));
  certify(group, seeds);
  return seeds;
}

SeedSystem user_seeds(const ReflectionGroup& group, std::vector<Polynomial> polys) {
  const auto expected = classical_degrees(group.spec());
  if (polys.size() != expected.size())
    throw InvalidSeeds("expected " + std::to_string(expected.size()) + " seed polynomials, got " +
                       std::to_string(polys.size()));
  for (auto& p : polys) {
    if (p.num_vars() != group.rank()) throw InvalidSeeds("seed has the wrong number of variables");
    p = p.in_field(group.field());
  }
  std::stable_sort(polys.begin(), polys.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.degree() < b.degree();
  });
  SeedSystem seeds;
  seeds.provenance = SeedKind::user;
  for (auto& p : polys) seeds.degrees.push_back(p.degree());
  if (seeds.degrees != expected) throw InvalidSeeds("seed degrees do not match the degree table");
  seeds.polys = std::move(polys);
  certify(group, seeds);
  return seeds;
}

Polynomial polynomial_determinant(const std::vector<std::vector<Polynomial>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("empty determinant");
  const std::size_t vars = m[0][0].num_vars();
  const Field field = m[0][0].field();
  // minor[mask] = det of rows (n - popcount(mask))..n-1 and the columns in mask
  std::map<unsigned, Polynomial> minor;
  minor.emplace(0u, Polynomial::constant(vars, field, Scalar::from_int(1, field)));
  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t row = n - size;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      Polynomial acc(vars, field);
      int sign = 1;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(mask & (1u << c))) continue;
        const Polynomial& entry = m[row][c];
        if (!entry.is_zero()) {
          Polynomial term = entry * minor.at(mask & ~(1u << c));
          if (sign > 0) acc += term;
          else acc -= term;
        }
        sign = -sign;
      }
      minor.emplace(mask, std::move(acc));
    }
  }
  return minor.at((1u << n) - 1);
}

JacobianCertificate jacobian_certificate(const std::vector<Polynomial>& polys, const Polynomial* delta) {
  if (polys.empty()) throw std::invalid_argument("empty seed system");
  const std::size_t n = polys.front().num_vars();
  if (polys.size() != n) throw std::invalid_argument("Jacobian needs n polynomials in n variables");
  std::vector<std::vector<Polynomial>> jac(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) jac[i].push_back(partial(polys[i], j));
  JacobianCertificate cert;
  cert.witness = polynomial_determinant(jac).chopped(1e-9);
  cert.is_independent = !cert.witness.is_zero();
  if (cert.is_independent && delta && !delta->is_zero()) {
    auto lead = delta->sorted_terms().front();
    Scalar ratio = cert.witness.coefficient(lead.first) / lead.second;
    if (!ratio.is_zero() && cert.witness.approx_equal(delta->scaled(ratio))) cert.delta_ratio = ratio;
  }
  return cert;
}

}  // namespace canon
