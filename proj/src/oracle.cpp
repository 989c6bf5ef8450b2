#include "canon/oracle.hpp"

#include <algorithm>
#include <map>

namespace canon {
namespace {

void monomials_of_degree(std::size_t n, int d, std::size_t var, Monomial& cur,
                         std::vector<Monomial>& out) {
  if (var + 1 == n) {
    cur.set(var, d);
    out.push_back(cur);
    cur.set(var, 0);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur.set(var, e);
    monomials_of_degree(n, d - e, var + 1, cur, out);
  }
  cur.set(var, 0);
}

// Orthogonalizes within a block under the metric (no normalization).
std::vector<Polynomial> orthogonalize(const std::vector<Polynomial>& block, const Metric& metric) {
  std::vector<Polynomial> out;
  std::vector<Scalar> norms;
  for (const auto& p : block) {
    Polynomial v = p;
    for (std::size_t i = 0; i < out.size(); ++i) v -= out[i].scaled(metric.inner(p, out[i]) / norms[i]);
    v = v.chopped(1e-10);
    norms.push_back(metric.inner(v, v));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

GradedInvariantBasis invariant_basis(ReflectionGroup& group, int d, std::size_t max_monomials) {
  GradedInvariantBasis out;
  out.degree = d;
  const std::size_t n = group.rank();
  if (d == 0) {
    out.basis.push_back(Polynomial::constant(n, group.field(), Scalar::from_int(1, group.field())));
    return out;
  }
  std::vector<Monomial> monos;
  Monomial cur;
  monomials_of_degree(n, d, 0, cur, monos);
  if (monos.size() > max_monomials)
    throw CapExceeded("degree " + std::to_string(d) + " has " + std::to_string(monos.size()) +
                      " monomials, above the oracle cap");
  group.enumerate();

  std::vector<Polynomial> images;
  for (const auto& m : monos) {
    Polynomial r = reynolds(Polynomial::monomial(n, group.field(), m, Scalar::from_int(1, group.field())), group);
    if (!r.is_zero()) images.push_back(std::move(r));
  }
  if (images.empty()) return out;
  Echelon e = fraction_free_echelon(coefficient_matrix(images));
  for (std::size_t k = 0; k < e.rank(); ++k) out.basis.push_back(images[e.row_order[k]]);
  return out;
}

std::vector<long> hilbert_series(const std::vector<int>& degrees, int max_degree) {
  std::vector<long> coeffs(static_cast<std::size_t>(max_degree) + 1, 0);
  coeffs[0] = 1;
  for (int m : degrees)
    for (int k = m; k <= max_degree; ++k) coeffs[static_cast<std::size_t>(k)] += coeffs[static_cast<std::size_t>(k - m)];
  return coeffs;
}

InvariantSystem flatto_solve(ReflectionGroup& group) {
  const auto degrees = classical_degrees(group.spec());
  const Metric& metric = group.metric();
  std::map<int, std::size_t> multiplicity;
  for (int d : degrees) ++multiplicity[d];

  std::vector<Polynomial> accepted;
  std::vector<Polynomial> raised;  // metric-raised accepted polynomials
  for (const auto& [deg, mult] : multiplicity) {
    auto basis = invariant_basis(group, deg).basis;
    if (basis.size() < mult)
      throw std::runtime_error("degree " + std::to_string(deg) + " has too few invariants");

    std::vector<Polynomial> solutions;
    if (accepted.empty()) {
      solutions = basis;
    } else {
      // column k holds every coefficient of f_prev(d) B_k, stacked over f_prev
      const std::size_t blocks = raised.size();
      std::vector<std::vector<Polynomial>> images(basis.size());
      for (std::size_t k = 0; k < basis.size(); ++k)
        for (const auto& r : raised) images[k].push_back(apply_diff(r, basis[k]));
      // monomial index per constraint block
      std::vector<std::vector<Monomial>> block_monos(blocks);
      for (std::size_t b = 0; b < blocks; ++b) {
        std::vector<Polynomial> col;
        for (std::size_t k = 0; k < basis.size(); ++k) col.push_back(images[k][b]);
        coefficient_matrix(col, &block_monos[b]);
      }
      std::size_t rows = 0;
      for (const auto& bm : block_monos) rows += bm.size();
      Matrix system(rows, basis.size(), group.field());
      std::size_t row = 0;
      for (std::size_t b = 0; b < blocks; ++b)
        for (const auto& mono : block_monos[b]) {
          for (std::size_t k = 0; k < basis.size(); ++k) system(row, k) = images[k][b].coefficient(mono);
          ++row;
        }
      for (const auto& v : nullspace(system)) {
        Polynomial f = group.zero();
        for (std::size_t k = 0; k < basis.size(); ++k)
          if (!v[k].is_zero()) f += basis[k].scaled(v[k]);
        solutions.push_back(f.chopped(1e-10));
      }
    }
    if (solutions.size() != mult)
      throw std::runtime_error("oracle: degree " + std::to_string(deg) + " solution space has dimension " +
                               std::to_string(solutions.size()) + ", expected " + std::to_string(mult));
    for (auto& f : orthogonalize(solutions, metric)) {
      raised.push_back(metric.raise(f));
      accepted.push_back(std::move(f));
    }
  }
  return make_system(group, accepted, Construction::oracle);
}

bool same_graded_spans(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  std::map<int, std::pair<std::vector<Polynomial>, std::vector<Polynomial>>> blocks;
  for (const auto& p : a) blocks[p.degree()].first.push_back(p);
  for (const auto& p : b) blocks[p.degree()].second.push_back(p);
  for (const auto& [deg, pair] : blocks) {
    const auto& [pa, pb] = pair;
    if (pa.size() != pb.size()) return false;
    std::vector<Polynomial> both = pa;
    both.insert(both.end(), pb.begin(), pb.end());
    std::size_t ra = rank(coefficient_matrix(pa));
    std::size_t rb = rank(coefficient_matrix(pb));
    std::size_t rab = rank(coefficient_matrix(both));
    if (ra != pa.size() || rb != pb.size() || rab != ra) return false;
  }
  return true;
}

}  // namespace canon
