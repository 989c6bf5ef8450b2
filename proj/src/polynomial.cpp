#include "canon/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace canon {

// ---- Monomial ------------------------------------------------------------

Monomial::Monomial(std::initializer_list<int> exps) : Monomial(std::vector<int>(exps)) {}

Monomial::Monomial(const std::vector<int>& exps) {
  if (exps.size() > kMaxVars) throw ContextError("too many variables");
  for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
}

Monomial Monomial::unit(std::size_t var) {
  Monomial m;
  m.set(var, 1);
  return m;
}

void Monomial::set(std::size_t i, int e) {
  if (i >= kMaxVars) throw ContextError("variable index out of range");
  if (e < 0 || e > 255) throw std::overflow_error("exponent out of range");
  degree_ = static_cast<std::uint16_t>(degree_ - exps_[i] + e);
  exps_[i] = static_cast<std::uint8_t>(e);
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    int e = exps_[i] + o.exps_[i];
    if (e > 255) throw std::overflow_error("exponent out of range");
    out.exps_[i] = static_cast<std::uint8_t>(e);
  }
  out.degree_ = static_cast<std::uint16_t>(degree_ + o.degree_);
  return out;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    out.exps_[i] = static_cast<std::uint8_t>(exps_[i] - o.exps_[i]);
  out.degree_ = static_cast<std::uint16_t>(degree_ - o.degree_);
  return out;
}

std::vector<int> Monomial::exponents(std::size_t num_vars) const {
  return {exps_.begin(), exps_.begin() + static_cast<long>(num_vars)};
}

bool graded_lex_before(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ > b.degree_;
  return a.exps_ > b.exps_;
}

std::size_t Monomial::hash() const {
  std::uint64_t lo = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) lo |= static_cast<std::uint64_t>(exps_[i]) << (8 * i);
  lo ^= lo >> 33;
  lo *= 0xff51afd7ed558ccdULL;
  lo ^= lo >> 33;
  return static_cast<std::size_t>(lo);
}

// ---- Polynomial ----------------------------------------------------------

Polynomial::Polynomial(std::size_t num_vars, Field field) : num_vars_(num_vars), field_(field) {
  if (num_vars > kMaxVars) throw ContextError("at most 8 variables are supported");
}

Polynomial Polynomial::constant(std::size_t num_vars, Field field, const Scalar& c) {
  Polynomial p(num_vars, field);
  p.add_term(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, Field field, std::size_t var) {
  if (var >= num_vars) throw ContextError("variable index out of range");
  return monomial(num_vars, field, Monomial::unit(var), Scalar::from_int(1, field));
}

Polynomial Polynomial::monomial(std::size_t num_vars, Field field, const Monomial& m,
                                const Scalar& c) {
  Polynomial p(num_vars, field);
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::linear_form(Field field, const std::vector<Scalar>& coeffs) {
  Polynomial p(coeffs.size(), field);
  for (std::size_t j = 0; j < coeffs.size(); ++j) p.add_term(Monomial::unit(j), coeffs[j]);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::optional<int> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::from_int(0, field_) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  if (field_ == Field::real && c.is_exact()) {
    add_term(m, c.in_field(Field::real));
    return;
  }
  if (field_ != Field::real && c.is_real()) throw FieldError("float coefficient in exact polynomial");
  if (field_ == Field::rational && c.is_quad()) throw FieldError("sqrt5 coefficient in polynomial over Q");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::vector<std::pair<Monomial, Scalar>> Polynomial::sorted_terms() const {
  std::vector<std::pair<Monomial, Scalar>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return graded_lex_before(a.first, b.first); });
  return out;
}

void require_compatible(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars() != b.num_vars())
    throw ContextError("variable count mismatch: " + std::to_string(a.num_vars()) + " vs " +
                       std::to_string(b.num_vars()));
  if (a.field() != b.field())
    throw FieldError("field mismatch: " + field_name(a.field()) + " vs " + field_name(b.field()));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_compatible(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_compatible(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(num_vars_, field_);
  out.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial out(num_vars_, field_);
  if (c.is_zero()) return out;
  Scalar k = field_ == Field::real ? c.in_field(Field::real) : c;
  out.terms_.reserve(terms_.size());
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * k);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_compatible(a, b);
  Polynomial out(a.num_vars_, a.field_);
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_ || a.terms_.size() != b.terms_.size()) return false;
  for (const auto& [m, c] : a.terms_) {
    auto it = b.terms_.find(m);
    if (it == b.terms_.end() || !(it->second == c)) return false;
  }
  return true;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  Polynomial result = constant(num_vars_, field_, Scalar::from_int(1, field_));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::in_field(Field field) const {
  Polynomial out(num_vars_, field);
  for (const auto& [m, c] : terms_) out.add_term(m, c.in_field(field));
  return out;
}

double Polynomial::max_abs_coefficient() const {
  double best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, std::abs(c.to_float()));
  return best;
}

Polynomial Polynomial::chopped(double rel_tol) const {
  if (field_ != Field::real) return *this;
  const double cut = rel_tol * max_abs_coefficient();
  Polynomial out(num_vars_, field_);
  for (const auto& [m, c] : terms_)
    if (std::abs(c.to_float()) > cut) out.terms_.emplace(m, c);
  return out;
}

bool Polynomial::approx_equal(const Polynomial& o, double rel_tol) const {
  if (field_ != Field::real && o.field_ != Field::real) return *this == o;
  if (num_vars_ != o.num_vars_) return false;
  const double scale = std::max({1.0, max_abs_coefficient(), o.max_abs_coefficient()});
  auto within = [&](const Polynomial& p, const Polynomial& q) {
    for (const auto& [m, c] : p.terms_) {
      double diff = std::abs(c.to_float() - q.coefficient(m).to_float());
      if (diff > rel_tol * scale) return false;
    }
    return true;
  };
  return within(*this, o) && within(o, *this);
}

Scalar Polynomial::evaluate(const std::vector<Scalar>& point) const {
  if (point.size() != num_vars_) throw ContextError("evaluation point has wrong dimension");
  Scalar total = Scalar::from_int(0, field_);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < num_vars_; ++i)
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    total += t;
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted_terms()) {
    std::string coef = c.to_string();
    bool neg = !coef.empty() && coef[0] == '-' && (c.is_rational() || c.is_real());
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (neg) coef.erase(0, 1);
    bool unit = coef == "1" && m.degree() > 0;
    if (c.is_quad()) os << "(" << coef << ")";
    else if (!unit) os << coef;
    bool star = !unit;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (m[i] == 0) continue;
      if (star) os << "*";
      star = true;
      os << "x" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
    }
    first = false;
  }
  return os.str();
}

// ---- calculus ------------------------------------------------------------

Polynomial partial(const Polynomial& f, std::size_t j) {
  if (j >= f.num_vars()) throw ContextError("partial derivative index out of range");
  Polynomial out(f.num_vars(), f.field());
  for (const auto& [m, c] : f.terms()) {
    int e = m[j];
    if (e == 0) continue;
    Monomial d = m;
    d.set(j, e - 1);
    out.add_term(d, c * Scalar::from_int(e, f.field()));
  }
  return out;
}

namespace {

// prod_i b_i! / (b_i - a_i)! as a scalar of `field`
Scalar falling_factor(const Monomial& a, const Monomial& b, std::size_t n, Field field) {
  long k = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < n && !overflow; ++i)
    for (int t = 0; t < a[i]; ++t)
      if (__builtin_mul_overflow(k, static_cast<long>(b[i] - t), &k)) {
        overflow = true;
        break;
      }
  if (!overflow) return Scalar::from_int(k, field);
  mpz_class big = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (int t = 0; t < a[i]; ++t) big *= b[i] - t;
  Scalar exact{mpq_class(big)};
  return exact.in_field(field);
}

}  // namespace

Polynomial apply_diff(const Polynomial& f, const Polynomial& g) {
  require_compatible(f, g);
  const std::size_t n = f.num_vars();
  Polynomial out(n, f.field());
  if (f.is_zero() || g.is_zero()) return out;
  const int gdeg = g.degree();
  for (const auto& [mf, cf] : f.terms()) {
    if (mf.degree() > gdeg) continue;
    for (const auto& [mg, cg] : g.terms()) {
      if (!mf.divides(mg)) continue;
      Scalar k = falling_factor(mf, mg, n, f.field());
      out.add_term(mg / mf, cf * cg * k);
    }
  }
  return out;
}

Scalar apolar_inner(const Polynomial& f, const Polynomial& g) {
  require_compatible(f, g);
  Scalar total = Scalar::from_int(0, f.field());
  const Polynomial& small = f.size() <= g.size() ? f : g;
  const Polynomial& large = f.size() <= g.size() ? g : f;
  for (const auto& [m, c] : small.terms()) {
    auto it = large.terms().find(m);
    if (it == large.terms().end()) continue;
    total += c * it->second * falling_factor(m, m, f.num_vars(), f.field());
  }
  return total;
}

Matrix coefficient_matrix(const std::vector<Polynomial>& polys, std::vector<Monomial>* monomials) {
  if (polys.empty()) return Matrix(0, 0, Field::rational);
  std::vector<Monomial> cols;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms())
      if (index.emplace(m, 0).second) cols.push_back(m);
  std::sort(cols.begin(), cols.end(), graded_lex_before);
  for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;
  Matrix out(polys.size(), cols.size(), polys.front().field());
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (const auto& [m, c] : polys[r].terms()) out(r, index.at(m)) = c;
  if (monomials) *monomials = std::move(cols);
  return out;
}

Polynomial substitute_linear(const Polynomial& f, const Matrix& m) {
  const std::size_t n = f.num_vars();
  if (m.rows() != n || m.cols() != n) throw ContextError("substitution matrix has wrong shape");
  const Field field = f.field();
  std::vector<Polynomial> forms;
  forms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial l(n, field);
    for (std::size_t j = 0; j < n; ++j) l.add_term(Monomial::unit(j), m(i, j).in_field(field));
    forms.push_back(std::move(l));
  }
  // powers[i][k] = forms[i]^k, grown on demand
  std::vector<std::vector<Polynomial>> powers(n);
  auto power = [&](std::size_t i, int k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(n, field, Scalar::from_int(1, field)));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * forms[i]);
    return cache[static_cast<std::size_t>(k)];
  };

  // Horner-style recursion on the first variable keeps products small.
  struct Rec {
    std::size_t n;
    Field field;
    decltype(power)& pw;
    Polynomial run(const std::vector<std::pair<Monomial, Scalar>>& terms, std::size_t var) {
      Polynomial out(n, field);
      if (terms.empty()) return out;
      if (var == n) {
        for (const auto& [mono, c] : terms) out.add_term(Monomial{}, c);
        return out;
      }
      std::unordered_map<int, std::vector<std::pair<Monomial, Scalar>>> by_exp;
      for (const auto& t : terms) by_exp[t.first[var]].push_back(t);
      for (auto& [e, group] : by_exp) {
        Polynomial rest = run(group, var + 1);
        out += e == 0 ? rest : pw(var, e) * rest;
      }
      return out;
    }
  };
  Rec rec{n, field, power};
  std::vector<std::pair<Monomial, Scalar>> terms(f.terms().begin(), f.terms().end());
  return rec.run(terms, 0);
}

// ---- Metric --------------------------------------------------------------

Metric::Metric(Matrix gram) {
  if (gram.rows() != gram.cols()) throw ContextError("Gram matrix must be square");
  inverse_gram_ = gram.inverse();
  gram_ = std::move(gram);
}

Matrix Metric::gram_or_identity(std::size_t n, Field field) const {
  return gram_ ? gram_->in_field(field) : Matrix::identity(n, field);
}

Polynomial Metric::raise(const Polynomial& f) const {
  if (is_identity()) return f;
  return substitute_linear(f, inverse_gram_->in_field(f.field()));
}

Polynomial Metric::apply(const Polynomial& f, const Polynomial& g) const {
  return apply_diff(raise(f), g);
}

Scalar Metric::inner(const Polynomial& f, const Polynomial& g) const {
  if (is_identity()) return apolar_inner(f, g);
  return apolar_inner(raise(f), g);
}

Scalar Metric::bilinear(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const {
  if (u.size() != v.size()) throw ContextError("vector length mismatch");
  Scalar total = Scalar::from_int(0, !u.empty() && u.front().is_real() ? Field::real : Field::sqrt5);
  if (is_identity()) {
    for (std::size_t i = 0; i < u.size(); ++i) total += u[i] * v[i];
    return total;
  }
  auto gv = *gram_ * v;
  for (std::size_t i = 0; i < u.size(); ++i) total += u[i] * gv[i];
  return total;
}

// ---- one-forms -----------------------------------------------------------

OneForm::OneForm(std::vector<Polynomial> components) : components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.num_vars() != components_.size())
      throw ContextError("one-form needs one component per variable");
    require_compatible(c, components_.front());
  }
}

OneForm OneForm::zero(std::size_t num_vars, Field field) {
  return OneForm(std::vector<Polynomial>(num_vars, Polynomial(num_vars, field)));
}

bool OneForm::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Polynomial& p) { return p.is_zero(); });
}

std::optional<int> OneForm::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& c : components_) {
    if (c.is_zero()) continue;
    auto d = c.homogeneous_degree();
    if (!d || (deg && *deg != *d)) return std::nullopt;
    deg = d;
  }
  return deg;
}

OneForm OneForm::scaled(const Scalar& c) const {
  std::vector<Polynomial> out;
  out.reserve(components_.size());
  for (const auto& p : components_) out.push_back(p.scaled(c));
  return OneForm(std::move(out));
}

OneForm differential(const Polynomial& f) {
  std::vector<Polynomial> comps;
  comps.reserve(f.num_vars());
  for (std::size_t j = 0; j < f.num_vars(); ++j) comps.push_back(partial(f, j));
  return OneForm(std::move(comps));
}

Scalar oneform_inner(const OneForm& a, const OneForm& b, const Metric& metric) {
  if (a.num_vars() != b.num_vars()) throw ContextError("one-form size mismatch");
  const std::size_t n = a.num_vars();
  const Field field = n ? a[0].field() : Field::rational;
  Scalar total = Scalar::from_int(0, field);
  if (metric.is_identity()) {
    for (std::size_t j = 0; j < n; ++j) total += apolar_inner(a[j], b[j]);
    return total;
  }
  const Matrix ginv = metric.inverse_gram().in_field(field);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (ginv(j, k).is_zero()) continue;
      total += ginv(j, k) * metric.inner(a[j], b[k]);
    }
  return total;
}

}  // namespace canon
