#include "canon/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace canon {
namespace {

Polynomial product_of_variables(std::size_t n, Field field) {
  return Polynomial::monomial(n, field, Monomial(std::vector<int>(n, 1)), Scalar::from_int(1, field));
}

// Rank check of each equal-degree block.
void require_block_independence(const std::vector<Polynomial>& polys) {
  std::map<int, std::vector<Polynomial>> blocks;
  for (const auto& p : polys) blocks[p.degree()].push_back(p);
  for (const auto& [deg, block] : blocks)
    if (rank(coefficient_matrix(block)) != block.size())
      throw std::runtime_error("candidates of degree " + std::to_string(deg) +
                               " are linearly dependent");
}

// Float pairings are compared against the size of the inputs.
double pairing_scale(const Polynomial& a, const Polynomial& b, const Metric& metric) {
  double na = std::abs(metric.inner(a, a).to_float());
  double nb = std::abs(metric.inner(b, b).to_float());
  return std::max(1e-300, std::sqrt(na * nb));
}

}  // namespace

Polynomial phi(const Polynomial& f, const Polynomial& delta, const Metric& metric) {
  Polynomial once = metric.apply(f, delta).chopped();
  return metric.apply(once, delta).chopped();
}

OneForm phi_tilde(const OneForm& w, const Polynomial& delta, const Metric& metric) {
  std::vector<Polynomial> out;
  out.reserve(w.num_vars());
  for (const auto& c : w.components()) out.push_back(phi(c, delta, metric));
  return OneForm(std::move(out));
}

Polynomial epsilon(const OneForm& w) {
  const std::size_t n = w.num_vars();
  if (n == 0) throw std::invalid_argument("empty one-form");
  const Field field = w[0].field();
  Polynomial out(n, field);
  for (std::size_t k = 0; k < n; ++k) {
    if (w[k].is_zero()) continue;
    out += Polynomial::variable(n, field, k) * w[k];
  }
  return out;
}

std::vector<Polynomial> candidate_system(const SeedSystem& seeds, const Polynomial& delta,
                                         const Metric& metric) {
  std::vector<Polynomial> out;
  out.reserve(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    Polynomial g = epsilon(phi_tilde(differential(seeds.polys[i]), delta, metric)).chopped();
    if (g.is_zero())
      throw std::runtime_error("candidate " + std::to_string(i + 1) +
                               " vanished: the seed lies in the ideal of lower invariants");
    auto deg = g.homogeneous_degree();
    if (!deg || *deg != seeds.degrees[i])
      throw std::runtime_error("candidate " + std::to_string(i + 1) + " has the wrong degree");
    out.push_back(std::move(g));
  }
  require_block_independence(out);
  return out;
}

std::vector<Polynomial> gram_schmidt_graded(const std::vector<Polynomial>& cands,
                                            const Metric& metric) {
  std::vector<Polynomial> out;
  std::vector<Scalar> norms;
  out.reserve(cands.size());
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const Polynomial& c = cands[k];
    if (!c.is_homogeneous() || c.is_zero())
      throw std::invalid_argument("Gram-Schmidt needs nonzero homogeneous candidates");
    if (k > 0 && c.degree() < cands[k - 1].degree())
      throw std::invalid_argument("Gram-Schmidt candidates must be sorted by degree");
    Polynomial v = c;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].degree() != c.degree()) continue;
      Scalar coef = metric.inner(c, out[i]) / norms[i];
      if (!coef.is_zero()) v -= out[i].scaled(coef);
    }
    v = v.chopped(1e-10);
    if (v.is_zero()) throw std::runtime_error("Gram-Schmidt met a dependent candidate");
    norms.push_back(metric.inner(v, v));
    out.push_back(std::move(v));
  }
  return out;
}

std::string construction_name(Construction c) {
  switch (c) {
    case Construction::gram_schmidt: return "gram-schmidt";
    case Construction::distinct_degrees: return "distinct-degrees";
    case Construction::dn_monomial: return "dn-monomial";
    case Construction::oracle: return "oracle";
    case Construction::external: return "external";
  }
  return "?";
}

Construction parse_construction(const std::string& name) {
  for (auto c : {Construction::gram_schmidt, Construction::distinct_degrees,
                 Construction::dn_monomial, Construction::oracle, Construction::external})
    if (construction_name(c) == name) return c;
  return Construction::external;
}

std::vector<Polynomial> InvariantSystem::polys() const {
  std::vector<Polynomial> out;
  for (const auto& e : entries) out.push_back(e.poly);
  return out;
}

std::vector<int> InvariantSystem::degrees() const {
  std::vector<int> out;
  for (const auto& e : entries) out.push_back(e.degree);
  return out;
}

Polynomial tidy_scale(const Polynomial& p) {
  if (p.is_zero() || p.field() == Field::real) return p;
  const Scalar lead = p.sorted_terms().front().second;
  if (p.field() == Field::sqrt5) return p.scaled(lead.inverse());
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    const mpq_class& q = c.rational();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  mpq_class factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (lead.is_negative()) factor = -factor;
  return p.scaled(Scalar(factor));
}

InvariantSystem make_system(const ReflectionGroup& group, std::vector<Polynomial> polys,
                            Construction provenance) {
  InvariantSystem sys;
  sys.group = group.spec();
  sys.provenance = provenance;
  for (auto& raw : polys) {
    Polynomial p = tidy_scale(raw);
    SystemEntry e{p, p.degree(), group.metric().inner(p, p)};
    sys.entries.push_back(std::move(e));
  }
  return sys;
}

bool has_repeated_degree(const GroupSpec& spec) {
  return spec.type == GroupType::D && spec.rank >= 4 && spec.rank % 2 == 0;
}

InvariantSystem canonical_system(const ReflectionGroup& group, const SeedSystem& seeds,
                                 Mode mode, const std::optional<Polynomial>& delta_override) {
  const Polynomial delta = delta_override ? *delta_override : antiinvariant_delta(group.roots());
  const Metric& metric = group.metric();
  if (seeds.size() != group.rank())
    throw std::invalid_argument("seed system size does not match the rank");

  if (mode == Mode::generic) {
    auto cands = candidate_system(seeds, delta, metric);
    return make_system(group, gram_schmidt_graded(cands, metric), Construction::gram_schmidt);
  }

  if (!has_repeated_degree(group.spec())) {
    auto degs = seeds.degrees;
    if (std::adjacent_find(degs.begin(), degs.end()) != degs.end())
      throw std::logic_error("refined mode expected distinct degrees for " + group.spec().label());
    return make_system(group, candidate_system(seeds, delta, metric), Construction::distinct_degrees);
  }

  // D_n, n = 2l: the monomial x_1...x_n fills the second degree-n slot, the
  // first one comes from b h_l - a h_{l+1}, which is orthogonal to it.
  const std::size_t n = group.rank();
  const std::size_t l = n / 2;
  const std::size_t first = l - 1, second = l;  // 0-based slots of degree n
  const Field field = group.field();
  const Polynomial mono = product_of_variables(n, field);
  const Scalar a = metric.inner(mono, seeds.polys[first]);
  const Scalar b = metric.inner(mono, seeds.polys[second]);
  if (a.is_zero() && b.is_zero())
    throw std::runtime_error("degenerate degree-n seed pair: both pairings with x_1...x_n vanish");
  Polynomial partner_seed = seeds.polys[first].scaled(b) - seeds.polys[second].scaled(a);
  if (partner_seed.is_zero()) throw std::runtime_error("degree-n seed combination vanished");

  SeedSystem modified = seeds;
  modified.polys[first] = partner_seed;
  std::vector<Polynomial> polys;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i == second) {
      polys.push_back(mono);
      continue;
    }
    Polynomial g = epsilon(phi_tilde(differential(modified.polys[i]), delta, metric)).chopped();
    if (g.is_zero()) throw std::runtime_error("candidate " + std::to_string(i + 1) + " vanished");
    polys.push_back(std::move(g));
  }
  require_block_independence(polys);
  return make_system(group, std::move(polys), Construction::dn_monomial);
}

std::optional<Scalar> monomial_eigenvalue(const ReflectionGroup& group,
                                          const std::optional<Polynomial>& delta_override) {
  if (group.spec().type != GroupType::D) return std::nullopt;
  const Polynomial delta = delta_override ? *delta_override : antiinvariant_delta(group.roots());
  const Polynomial mono = product_of_variables(group.rank(), group.field());
  OneForm df = differential(mono);
  OneForm image = phi_tilde(df, delta, group.metric());
  const auto lead = df[0].sorted_terms().front();
  Scalar lambda = image[0].coefficient(lead.first) / lead.second;
  if (!(image == df.scaled(lambda))) return std::nullopt;
  return lambda;
}

VerificationReport verify_canonical(const InvariantSystem& sys, const ReflectionGroup& group) {
  VerificationReport rep;
  const Metric& metric = group.metric();
  const std::size_t count = sys.entries.size();
  const bool inexact = group.field() == Field::real;
  const double tol = 1e-8;

  auto fail = [&](std::string msg) { rep.failures.push_back(std::move(msg)); };

  // degree table
  std::vector<int> degs = sys.degrees();
  std::vector<int> sorted = degs;
  std::sort(sorted.begin(), sorted.end());
  rep.degrees_ok = sorted == classical_degrees(group.spec());
  for (std::size_t i = 0; i < count; ++i) {
    auto d = sys.entries[i].poly.homogeneous_degree();
    if (!d || *d != sys.entries[i].degree) {
      rep.degrees_ok = false;
      fail("entry " + std::to_string(i + 1) + " is not homogeneous of its stated degree");
    }
  }
  if (!rep.degrees_ok) fail("degree multiset does not match the classical table");

  for (std::size_t i = 0; i < count; ++i) {
    const auto& e = sys.entries[i];
    rep.invariant.push_back(group.is_invariant(e.poly));
    if (!rep.invariant.back()) fail("entry " + std::to_string(i + 1) + " is not invariant");
  }

  for (std::size_t i = 0; i < count; ++i) {
    const Polynomial raised = metric.raise(sys.entries[i].poly);
    for (std::size_t j = 0; j < count; ++j) {
      PairingCheck pc;
      pc.i = i;
      pc.j = j;
      pc.value = apply_diff(raised, sys.entries[j].poly);
      const std::string tag = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (i != j) {
        if (inexact) {
          double scale = pairing_scale(sys.entries[i].poly, sys.entries[j].poly, metric);
          pc.ok = pc.value.max_abs_coefficient() <= tol * scale;
        } else {
          pc.ok = pc.value.is_zero();
        }
        if (!pc.ok) fail("pair " + tag + ": (f_i,f_j) = " + pc.value.to_string() + " != 0");
      } else {
        const Scalar c = pc.value.constant_term();
        bool constant = inexact ? (pc.value - Polynomial::constant(pc.value.num_vars(), pc.value.field(), c))
                                          .max_abs_coefficient() <= tol * std::abs(c.to_float())
                                : pc.value.degree() <= 0;
        bool positive = c.is_positive();
        bool matches = c.approx_equal(sys.entries[i].norm, inexact ? tol : 0.0);
        rep.norm_positive.push_back(positive);
        rep.norm_matches.push_back(matches);
        pc.ok = constant && positive && matches;
        if (!constant) fail("pair " + tag + ": (f_i,f_i) is not a constant");
        if (!positive) fail("pair " + tag + ": norm " + c.to_string() + " is not positive");
        if (!matches)
          fail("pair " + tag + ": stored norm " + sys.entries[i].norm.to_string() +
               " differs from " + c.to_string());
      }
      rep.pairings.push_back(std::move(pc));
    }
  }
  rep.passed = rep.failures.empty() && count == group.rank();
  if (count != group.rank()) {
    rep.failures.push_back("system has " + std::to_string(count) + " entries, rank is " +
                           std::to_string(group.rank()));
    rep.passed = false;
  }
  return rep;
}

std::vector<Polynomial> float_normalized(const InvariantSystem& sys) {
  std::vector<Polynomial> out;
  for (const auto& e : sys.entries) {
    double c = e.norm.to_float();
    out.push_back(e.poly.in_field(Field::real).scaled(Scalar::real(1.0 / std::sqrt(c))));
  }
  return out;
}

double normalized_defect(const InvariantSystem& sys, const Metric& metric) {
  auto normed = float_normalized(sys);
  Metric fmetric = metric.is_identity() ? Metric{} : Metric(metric.gram().in_field(Field::real));
  double worst = 0;
  for (std::size_t i = 0; i < normed.size(); ++i)
    for (std::size_t j = 0; j < normed.size(); ++j) {
      Polynomial v = fmetric.apply(normed[i], normed[j]);
      if (i == j)
        v -= Polynomial::constant(v.num_vars(), Field::real, Scalar::real(1.0));
      worst = std::max(worst, v.max_abs_coefficient());
    }
  return worst;
}

}  // namespace canon
