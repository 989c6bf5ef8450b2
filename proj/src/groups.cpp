#include "canon/groups.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numbers>
#include <unordered_map>

namespace canon {
namespace {

std::size_t factorial(int n) {
  std::size_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::size_t>(i);
  return r;
}

Scalar q(long num, long den = 1) { return Scalar(num, den); }

// a/b + c/d * sqrt5
Scalar qs(long a, long b, long c, long d) { return Scalar::quad(mpq_class(a, b), mpq_class(c, d)); }

Vector unit(int n, int i, int sign = 1) {
  Vector v(static_cast<std::size_t>(n), q(0));
  v[static_cast<std::size_t>(i)] = q(sign);
  return v;
}

Vector add(const Vector& a, const Vector& b) {
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Matrix cartan_gram(int n, const std::vector<std::pair<int, int>>& edges) {
  Matrix g(static_cast<std::size_t>(n), static_cast<std::size_t>(n), Field::rational);
  for (int i = 0; i < n; ++i) g(i, i) = q(2);
  for (auto [i, j] : edges) g(i, j) = g(j, i) = q(-1);
  return g;
}

// Hash of a vector/matrix entry list that is stable under the float tolerance.
std::size_t approx_hash(const std::vector<Scalar>& entries) {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& e : entries) {
    long bucket = std::lround(e.to_float() * 1e4);
    h ^= std::hash<long>{}(bucket) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool approx_same(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].approx_equal(b[i])) return false;
  return true;
}

// Deduplicating store of vectors keyed by approx_hash.
class VectorSet {
 public:
  // Returns true when v was new.
  bool insert(const Vector& v) {
    auto& bucket = index_[approx_hash(v)];
    for (auto idx : bucket)
      if (approx_same(items_[idx], v)) return false;
    bucket.push_back(items_.size());
    items_.push_back(v);
    return true;
  }
  const std::vector<Vector>& items() const { return items_; }

 private:
  std::unordered_map<std::size_t, std::vector<std::size_t>> index_;
  std::vector<Vector> items_;
};

std::vector<Scalar> flatten(const Matrix& m) {
  std::vector<Scalar> out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  return out;
}

struct RootData {
  std::vector<Vector> simple;
  std::optional<Matrix> gram;  // nullopt: orthonormal coordinates
};

// Gram matrix of the simple roots of I2(m) with lengths 1 and 2cos(pi/m):
// [[1, -(1+c)], [-(1+c), 2(1+c)]] with c = cos(2pi/m).
// Gram matrix of the simple roots of I2(m). For odd m every root lies in one
// orbit, so both simple roots get length 1 and B(a1, a2) = -cos(pi/m). For
// even m the lengths are 1 and 2(1 + cos(2pi/m)), which keeps the entries
// rational for m = 4, 6.
Matrix dihedral_gram(int m, Field field) {
  Scalar len2 = q(1), cross;
  if (m % 2 == 1) {
    switch (m) {
      case 3: cross = q(1, 2); break;
      case 5: cross = qs(1, 4, 1, 4); break;  // cos(pi/5) = (1 + sqrt5)/4
      default:
        if (field != Field::real)
          throw UnsupportedGroup("I2(" + std::to_string(m) + ") has no exact model here; use the float field");
        cross = Scalar::real(std::cos(std::numbers::pi / m));
    }
  } else {
    switch (m) {
      case 4: cross = q(1); break;
      case 6: cross = q(3, 2); break;
      case 10: cross = qs(5, 4, 1, 4); break;  // 1 + (sqrt5 + 1)/4
      default:
        if (field != Field::real)
          throw UnsupportedGroup("I2(" + std::to_string(m) + ") has no exact model here; use the float field");
        cross = Scalar::real(1.0 + std::cos(2.0 * std::numbers::pi / m));
    }
    len2 = cross + cross;
  }
  Matrix g(2, 2, field);
  g(0, 0) = Scalar::from_int(1, field);
  g(0, 1) = g(1, 0) = (-cross).in_field(field);
  g(1, 1) = len2.in_field(field);
  return g;
}

RootData root_data(const GroupSpec& spec) {
  const int n = spec.rank;
  RootData d;
  switch (spec.type) {
    case GroupType::A: {
      for (int i = 0; i < n; ++i) d.simple.push_back(unit(n, i));
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      d.gram = cartan_gram(n, edges);
      break;
    }
    case GroupType::B:
      for (int i = 0; i + 1 < n; ++i) d.simple.push_back(add(unit(n, i), unit(n, i + 1, -1)));
      d.simple.push_back(unit(n, n - 1));
      break;
    case GroupType::D:
      for (int i = 0; i + 1 < n; ++i) d.simple.push_back(add(unit(n, i), unit(n, i + 1, -1)));
      d.simple.push_back(add(unit(n, n - 2), unit(n, n - 1)));
      break;
    case GroupType::F4:
      d.simple = {{q(0), q(1), q(-1), q(0)},
                  {q(0), q(0), q(1), q(-1)},
                  {q(0), q(0), q(0), q(1)},
                  {q(1, 2), q(-1, 2), q(-1, 2), q(-1, 2)}};
      break;
    case GroupType::H3: {
      // (0,2,0), (0,0,2), (1/phi, -phi, -1)
      Scalar inv_phi = qs(-1, 2, 1, 2);
      Scalar phi = qs(1, 2, 1, 2);
      d.simple = {{q(0), q(2), q(0)}, {q(0), q(0), q(2)}, {inv_phi, -phi, q(-1)}};
      break;
    }
    case GroupType::H4: {
      Scalar inv_phi = qs(-1, 2, 1, 2);
      Scalar phi = qs(1, 2, 1, 2);
      d.simple = {{q(0), q(0), q(0), q(2)},
                  {q(0), q(0), q(2), q(0)},
                  {q(0), inv_phi, q(-1), -phi},
                  {inv_phi, -phi, q(-1), q(0)}};
      break;
    }
    case GroupType::E6:
      // Bourbaki labels 1-3-4-5-6 in a chain, 2 attached to 4.
      for (int i = 0; i < 6; ++i) d.simple.push_back(unit(6, i));
      d.gram = cartan_gram(6, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}});
      break;
    case GroupType::I2:
      if (spec.field == Field::real) {
        // no exactness to protect, so use orthonormal coordinates; the
        // root-basis model loses about 1e-9 relative accuracy for even m
        const double t = std::numbers::pi / spec.m;
        d.simple = {{Scalar::real(1.0), Scalar::real(0.0)},
                    {Scalar::real(-std::cos(t)), Scalar::real(std::sin(t))}};
        break;
      }
      d.simple = {unit(2, 0), unit(2, 1)};
      d.gram = dihedral_gram(spec.m, spec.field);
      break;
    default:
      throw UnsupportedGroup(spec.label() + " is not supported");
  }
  for (auto& v : d.simple)
    for (auto& x : v) x = x.in_field(spec.field);
  if (d.gram) d.gram = d.gram->in_field(spec.field);
  return d;
}

}  // namespace

FieldChoice parse_field_choice(const std::string& text) {
  if (text == "auto") return FieldChoice::automatic;
  if (text == "Q") return FieldChoice::rational;
  if (text == "Qsqrt5" || text == "Q(sqrt5)") return FieldChoice::sqrt5;
  if (text == "float") return FieldChoice::real;
  throw std::invalid_argument("unknown field selector '" + text + "'");
}

GroupType parse_group_type(const std::string& text, int rank) {
  if (text == "A") return GroupType::A;
  if (text == "B") return GroupType::B;
  if (text == "D") return GroupType::D;
  if (text == "I" || text == "I2") return GroupType::I2;
  if (text == "H3") return GroupType::H3;
  if (text == "H4") return GroupType::H4;
  if (text == "F" || text == "F4") return GroupType::F4;
  if (text == "E6") return GroupType::E6;
  if (text == "E7") return GroupType::E7;
  if (text == "E8") return GroupType::E8;
  if (text == "H") {
    if (rank == 3) return GroupType::H3;
    if (rank == 4) return GroupType::H4;
    throw UnsupportedGroup("type H exists only in rank 3 and 4");
  }
  if (text == "E") {
    if (rank == 6) return GroupType::E6;
    if (rank == 7) return GroupType::E7;
    if (rank == 8) return GroupType::E8;
    throw UnsupportedGroup("type E exists only in rank 6, 7, 8");
  }
  throw UnsupportedGroup("unknown group type '" + text + "'");
}

namespace {
int fixed_rank(const char* name, int requested, int actual) {
  if (requested != 0 && requested != actual)
    throw UnsupportedGroup(std::string(name) + " has rank " + std::to_string(actual) + ", not " +
                           std::to_string(requested));
  return actual;
}
}  // namespace

GroupSpec GroupSpec::make(GroupType type, int rank, int m, FieldChoice field, bool allow_opt_in) {
  GroupSpec s;
  s.type = type;
  s.rank = rank;
  switch (type) {
    case GroupType::A:
      if (rank < 1 || rank > 7) throw UnsupportedGroup("A_n needs 1 <= n <= 7");
      break;
    case GroupType::B:
      if (rank < 1 || rank > 8) throw UnsupportedGroup("B_n needs 1 <= n <= 8");
      break;
    case GroupType::D:
      if (rank < 3 || rank > 8) throw UnsupportedGroup("D_n needs 3 <= n <= 8 (D2 is reducible)");
      break;
    case GroupType::I2:
      s.rank = 2;
      if (rank != 2 && rank != 0) throw UnsupportedGroup("I2(m) has rank 2");
      if (m < 3) throw UnsupportedGroup("I2(m) needs m >= 3 (I2(2) is reducible)");
      s.m = m;
      break;
    case GroupType::H3: s.rank = fixed_rank("H3", rank, 3); break;
    case GroupType::F4: s.rank = fixed_rank("F4", rank, 4); break;
    case GroupType::H4:
      s.rank = fixed_rank("H4", rank, 4);
      if (!allow_opt_in) throw UnsupportedGroup("H4 requires the explicit opt-in flag (--allow-large)");
      break;
    case GroupType::E6:
      s.rank = fixed_rank("E6", rank, 6);
      if (!allow_opt_in) throw UnsupportedGroup("E6 requires the explicit opt-in flag (--allow-large)");
      break;
    case GroupType::E7:
    case GroupType::E8:
      throw UnsupportedGroup(
          std::string(type == GroupType::E7 ? "E7" : "E8") +
          " is out of scope: the group order (" + (type == GroupType::E7 ? "2903040" : "696729600") +
          ") exceeds the element cap and the antiinvariant has degree " +
          (type == GroupType::E7 ? "63" : "120") + ", far beyond exact desk-scale computation");
  }
  if (type != GroupType::I2 && m != 0) throw UnsupportedGroup("the m parameter is only valid for I2");

  bool needs_sqrt5 = type == GroupType::H3 || type == GroupType::H4 ||
                     (type == GroupType::I2 && (m == 5 || m == 10));
  bool exact_ok = type != GroupType::I2 || m == 3 || m == 4 || m == 5 || m == 6 || m == 10;
  switch (field) {
    case FieldChoice::automatic:
      s.field = !exact_ok ? Field::real : needs_sqrt5 ? Field::sqrt5 : Field::rational;
      break;
    case FieldChoice::rational:
      if (needs_sqrt5 || !exact_ok)
        throw UnsupportedGroup(s.label() + " cannot be realized over Q");
      s.field = Field::rational;
      break;
    case FieldChoice::sqrt5:
      if (!exact_ok) throw UnsupportedGroup(s.label() + " cannot be realized over Q(sqrt5)");
      s.field = Field::sqrt5;
      break;
    case FieldChoice::real: s.field = Field::real; break;
  }
  return s;
}

std::string GroupSpec::type_letter() const {
  switch (type) {
    case GroupType::A: return "A";
    case GroupType::B: return "B";
    case GroupType::D: return "D";
    case GroupType::I2: return "I2";
    case GroupType::H3:
    case GroupType::H4: return "H";
    case GroupType::F4: return "F";
    default: return "E";
  }
}

std::string GroupSpec::label() const {
  if (type == GroupType::I2) return "I2(" + std::to_string(m) + ")";
  return type_letter() + std::to_string(rank);
}

std::vector<int> classical_degrees(const GroupSpec& s) {
  const int n = s.rank;
  std::vector<int> d;
  switch (s.type) {
    case GroupType::A:
      for (int i = 2; i <= n + 1; ++i) d.push_back(i);
      break;
    case GroupType::B:
      for (int i = 1; i <= n; ++i) d.push_back(2 * i);
      break;
    case GroupType::D:
      for (int i = 1; i < n; ++i) d.push_back(2 * i);
      d.push_back(n);
      break;
    case GroupType::I2: d = {2, s.m}; break;
    case GroupType::H3: d = {2, 6, 10}; break;
    case GroupType::H4: d = {2, 12, 20, 30}; break;
    case GroupType::F4: d = {2, 6, 8, 12}; break;
    case GroupType::E6: d = {2, 5, 6, 8, 9, 12}; break;
    case GroupType::E7: d = {2, 6, 8, 10, 12, 14, 18}; break;
    case GroupType::E8: d = {2, 8, 12, 14, 18, 20, 24, 30}; break;
  }
  std::stable_sort(d.begin(), d.end());
  return d;
}

std::size_t classical_order(const GroupSpec& s) {
  const int n = s.rank;
  switch (s.type) {
    case GroupType::A: return factorial(n + 1);
    case GroupType::B: return (std::size_t{1} << n) * factorial(n);
    case GroupType::D: return (std::size_t{1} << (n - 1)) * factorial(n);
    case GroupType::I2: return static_cast<std::size_t>(2 * s.m);
    case GroupType::H3: return 120;
    case GroupType::H4: return 14400;
    case GroupType::F4: return 1152;
    case GroupType::E6: return 51840;
    case GroupType::E7: return 2903040;
    case GroupType::E8: return 696729600;
  }
  return 0;
}

std::size_t classical_positive_root_count(const GroupSpec& s) {
  const std::size_t n = static_cast<std::size_t>(s.rank);
  switch (s.type) {
    case GroupType::A: return n * (n + 1) / 2;
    case GroupType::B: return n * n;
    case GroupType::D: return n * (n - 1);
    case GroupType::I2: return static_cast<std::size_t>(s.m);
    case GroupType::H3: return 15;
    case GroupType::H4: return 60;
    case GroupType::F4: return 24;
    case GroupType::E6: return 36;
    case GroupType::E7: return 63;
    case GroupType::E8: return 120;
  }
  return 0;
}

Matrix reflection_matrix(const Vector& root, const Metric& metric, Field field) {
  const std::size_t n = root.size();
  Vector a(root.size());
  for (std::size_t i = 0; i < n; ++i) a[i] = root[i].in_field(field);
  Scalar norm = metric.bilinear(a, a);
  if (norm.is_zero()) throw std::invalid_argument("reflection in the zero vector");
  // covector B(., a) = (G a)^T
  Vector ga = metric.is_identity() ? a : metric.gram().in_field(field) * a;
  Scalar two = Scalar::from_int(2, field);
  Matrix s = Matrix::identity(n, field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i].is_zero() || ga[j].is_zero()) continue;
      s(i, j) -= two * a[i] * ga[j] / norm;
    }
  return s;
}

RootSystem build_root_system(const GroupSpec& spec) {
  RootData data = root_data(spec);
  RootSystem rs;
  rs.spec = spec;
  if (data.gram) rs.metric = Metric(*data.gram);
  rs.simple_roots = data.simple;
  const std::size_t n = data.simple.size();
  const Field field = spec.field;

  std::vector<Matrix> gens;
  for (const auto& a : data.simple) gens.push_back(reflection_matrix(a, rs.metric, field));

  // all roots: closure of the simple roots under the simple reflections
  VectorSet roots;
  std::deque<Vector> queue;
  for (const auto& a : data.simple)
    if (roots.insert(a)) queue.push_back(a);
  while (!queue.empty()) {
    Vector v = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Vector w = g * v;
      if (roots.insert(w)) queue.push_back(std::move(w));
    }
    if (roots.items().size() > 4 * classical_positive_root_count(spec) + 8)
      throw std::logic_error("root closure did not terminate for " + spec.label());
  }

  // positive roots: nonnegative coordinates in the simple-root basis
  Matrix basis(n, n, field);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) basis(r, c) = data.simple[c][r];
  Matrix to_simple = basis.inverse();
  for (const auto& v : roots.items()) {
    Vector coords = to_simple * v;
    bool positive = std::all_of(coords.begin(), coords.end(), [&](const Scalar& c) {
      return field == Field::real ? c.to_float() > -kFloatTolerance : !c.is_negative();
    });
    if (positive) rs.positive_roots.push_back(v);
  }
  if (rs.positive_roots.size() != classical_positive_root_count(spec) ||
      roots.items().size() != 2 * rs.positive_roots.size())
    throw std::logic_error("root closure for " + spec.label() + " produced " +
                           std::to_string(roots.items().size()) + " roots");
  return rs;
}

std::size_t default_group_cap() {
  if (const char* env = std::getenv("CANON_MAX_GROUP_ORDER")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 52000;
}

ReflectionGroup::ReflectionGroup(RootSystem roots) : roots_(std::move(roots)) {
  for (const auto& a : roots_.simple_roots)
    generators_.push_back(reflection_matrix(a, roots_.metric, roots_.field()));
}

const std::vector<GroupElement>& ReflectionGroup::enumerate(std::size_t cap) {
  if (elements_) return *elements_;
  if (classical_order(spec()) > cap)
    throw CapExceeded(spec().label() + " has order " + std::to_string(classical_order(spec())) +
                      ", above the element cap " + std::to_string(cap) +
                      " (set CANON_MAX_GROUP_ORDER to raise it)");
  std::vector<GroupElement> elems;
  std::unordered_map<std::size_t, std::vector<std::size_t>> index;
  auto insert = [&](Matrix m, int det) {
    auto flat = flatten(m);
    auto& bucket = index[approx_hash(flat)];
    for (auto i : bucket)
      if (elems[i].matrix.approx_equal(m)) return false;
    if (elems.size() >= cap) throw CapExceeded(spec().label() + ": element cap exceeded");
    bucket.push_back(elems.size());
    elems.push_back({std::move(m), det});
    return true;
  };
  insert(Matrix::identity(rank(), field()), 1);
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto& g : generators_) {
      Matrix next = g * elems[head].matrix;
      insert(std::move(next), -elems[head].det);
    }
  elements_ = std::move(elems);
  return *elements_;
}

const std::vector<GroupElement>& ReflectionGroup::elements() const {
  if (!elements_) throw std::logic_error("group " + spec().label() + " is not enumerated");
  return *elements_;
}

Polynomial ReflectionGroup::norm_form() const {
  const std::size_t n = rank();
  Matrix g = roots_.metric.gram_or_identity(n, field());
  Polynomial out = zero();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (g(i, j).is_zero()) continue;
      Monomial m;
      m.set(i, 1);
      m.set(j, m[j] + 1);
      out.add_term(m, g(i, j));
    }
  return out;
}

bool ReflectionGroup::is_invariant(const Polynomial& f) const {
  for (const auto& g : generators_) {
    // generators are involutions, so g^-1 = g
    Polynomial moved = substitute_linear(f, g);
    if (!moved.approx_equal(f)) return false;
  }
  return true;
}

Polynomial act(const Matrix& w, const Polynomial& f) {
  return substitute_linear(f, w.inverse());
}

Polynomial root_form(const Vector& root, const Metric& metric, Field field) {
  Vector a(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) a[i] = root[i].in_field(field);
  Vector covector = metric.is_identity() ? a : metric.gram().in_field(field) * a;
  return Polynomial::linear_form(field, covector);
}

Polynomial antiinvariant_delta(const RootSystem& rs) {
  Polynomial delta = Polynomial::constant(rs.rank(), rs.field(), Scalar::from_int(1, rs.field()));
  for (const auto& a : rs.positive_roots) delta = (delta * root_form(a, rs.metric, rs.field())).chopped();
  return delta;
}

Polynomial reynolds(const Polynomial& f, const ReflectionGroup& group) {
  const auto& elems = group.elements();
  Polynomial sum(f.num_vars(), f.field());
  // the element list is closed under inversion, so summing f(wx) is the same
  // as summing f(w^-1 x)
  for (const auto& e : elems) sum += substitute_linear(f, e.matrix);
  Scalar inv = Scalar::from_int(static_cast<long>(elems.size()), f.field()).inverse();
  return sum.scaled(inv).chopped();
}

Polynomial orbit_power_average(const Vector& coeffs, int d, const ReflectionGroup& group) {
  const Field field = group.field();
  Vector start(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) start[i] = coeffs[i].in_field(field);
  // w.l has coefficient vector (w^-1)^T c; generators are involutions
  std::vector<Matrix> transposes;
  for (const auto& g : group.generators()) transposes.push_back(g.transpose());
  VectorSet orbit;
  std::deque<Vector> queue;
  orbit.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    Vector v = std::move(queue.front());
    queue.pop_front();
    for (const auto& t : transposes) {
      Vector w = t * v;
      if (orbit.insert(w)) queue.push_back(std::move(w));
    }
  }
  Polynomial sum = group.zero();
  for (const auto& c : orbit.items()) sum += Polynomial::linear_form(field, c).pow(d);
  Scalar inv = Scalar::from_int(static_cast<long>(orbit.items().size()), field).inverse();
  return sum.scaled(inv).chopped();
}

}  // namespace canon
