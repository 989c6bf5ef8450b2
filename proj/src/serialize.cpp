#include "canon/serialize.hpp"

#include <sstream>

namespace canon {

json polynomial_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.sorted_terms())
    terms.push_back({{"exp", m.exponents(p.num_vars())}, {"coef", c.to_string()}});
  return {{"vars", p.num_vars()}, {"field", field_name(p.field())}, {"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const json& j) {
  try {
    const std::size_t n = j.at("vars").get<std::size_t>();
    const Field field = parse_field(j.at("field").get<std::string>());
    Polynomial p(n, field);
    for (const auto& t : j.at("terms")) {
      auto exps = t.at("exp").get<std::vector<int>>();
      if (exps.size() != n) throw std::invalid_argument("exponent vector has wrong length");
      Scalar c = Scalar::parse(t.at("coef").get<std::string>());
      if (field == Field::rational && c.is_quad())
        throw std::invalid_argument("sqrt5 coefficient in a polynomial over Q");
      if (field != Field::real && c.is_real())
        throw std::invalid_argument("float coefficient in an exact polynomial");
      p.add_term(Monomial(exps), c);
    }
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed polynomial JSON: ") + e.what());
  }
}

json group_to_json(const GroupSpec& spec) {
  json j = {{"type", spec.type_letter()}, {"rank", spec.rank}};
  if (spec.type == GroupType::I2) j["m"] = spec.m;
  j["label"] = spec.label();
  j["field"] = field_name(spec.field);
  j["order"] = classical_order(spec);
  return j;
}

GroupSpec group_from_json(const json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    const int rank = j.at("rank").get<int>();
    const int m = j.contains("m") ? j.at("m").get<int>() : 0;
    FieldChoice choice = FieldChoice::automatic;
    if (j.contains("field")) {
      switch (parse_field(j.at("field").get<std::string>())) {
        case Field::rational: choice = FieldChoice::rational; break;
        case Field::sqrt5: choice = FieldChoice::sqrt5; break;
        case Field::real: choice = FieldChoice::real; break;
      }
    }
    return GroupSpec::make(parse_group_type(type, rank), rank, m, choice, true);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed group JSON: ") + e.what());
  }
}

json root_system_to_json(const RootSystem& rs) {
  auto vec = [](const Vector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.to_string());
    return a;
  };
  json pos = json::array(), simple = json::array();
  for (const auto& r : rs.positive_roots) pos.push_back(vec(r));
  for (const auto& r : rs.simple_roots) simple.push_back(vec(r));
  json j = {{"type", rs.spec.type_letter()}, {"rank", rs.spec.rank}};
  if (rs.spec.type == GroupType::I2) j["m"] = rs.spec.m;
  j["field"] = field_name(rs.spec.field);
  j["simple_roots"] = std::move(simple);
  j["positive_roots"] = std::move(pos);
  if (!rs.metric.is_identity()) {
    json g = json::array();
    for (std::size_t r = 0; r < rs.metric.gram().rows(); ++r) g.push_back(vec(rs.metric.gram().row(r)));
    j["gram"] = std::move(g);
  }
  return j;
}

json system_to_json(const InvariantSystem& sys) {
  json entries = json::array();
  for (const auto& e : sys.entries)
    entries.push_back({{"degree", e.degree}, {"norm", e.norm.to_string()}, {"poly", polynomial_to_json(e.poly)}});
  return {{"group", group_to_json(sys.group)},
          {"entries", std::move(entries)},
          {"provenance", construction_name(sys.provenance)},
          {"verified", sys.verified}};
}

InvariantSystem system_from_json(const json& j) {
  try {
    InvariantSystem sys;
    sys.group = group_from_json(j.at("group"));
    sys.provenance = parse_construction(j.value("provenance", std::string("external")));
    sys.verified = j.value("verified", false);
    for (const auto& e : j.at("entries")) {
      SystemEntry entry{polynomial_from_json(e.at("poly")), e.at("degree").get<int>(),
                        Scalar::parse(e.at("norm").get<std::string>())};
      if (entry.poly.field() != sys.group.field)
        entry.poly = entry.poly.in_field(sys.group.field);
      sys.entries.push_back(std::move(entry));
    }
    return sys;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed system JSON: ") + e.what());
  }
}

json report_to_json(const VerificationReport& rep) {
  json pairs = json::array();
  for (const auto& p : rep.pairings) {
    if (p.ok && p.i != p.j) continue;  // zero off-diagonal pairings are implied by "ok"
    pairs.push_back({{"i", p.i + 1}, {"j", p.j + 1}, {"ok", p.ok}, {"value", polynomial_to_json(p.value)}});
  }
  return {{"passed", rep.passed},
          {"degrees_ok", rep.degrees_ok},
          {"invariant", rep.invariant},
          {"norm_positive", rep.norm_positive},
          {"checked_pairs", rep.pairings.size()},
          {"pairings", std::move(pairs)},
          {"failures", rep.failures}};
}

namespace {

std::string latex_scalar(const Scalar& c) {
  if (c.is_real()) return c.to_string();
  auto frac = [](const mpq_class& q) {
    mpq_class a = abs(q);
    if (a.get_den() == 1) return a.get_num().get_str();
    return "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
  };
  if (c.is_rational()) return frac(c.rational());
  std::string out = "\\left(";
  if (sgn(c.quad_a()) < 0) out += "-";
  out += frac(c.quad_a());
  out += sgn(c.quad_b()) < 0 ? " - " : " + ";
  out += frac(c.quad_b()) + "\\sqrt{5}\\right)";
  return out;
}

}  // namespace

std::string polynomial_to_latex(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.sorted_terms()) {
    bool neg = c.is_quad() ? false : c.is_negative();
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    std::string coef = latex_scalar(c);
    bool unit = !c.is_quad() && (coef == "1") && m.degree() > 0;
    if (!unit) os << coef;
    for (std::size_t i = 0; i < p.num_vars(); ++i) {
      if (m[i] == 0) continue;
      os << "x_{" << i + 1 << "}";
      if (m[i] > 1) os << "^{" << m[i] << "}";
    }
    first = false;
  }
  return os.str();
}

std::string system_to_latex(const InvariantSystem& sys) {
  std::ostringstream os;
  os << "% " << sys.group.label() << ", construction: " << construction_name(sys.provenance) << "\n";
  os << "\\begin{align*}\n";
  for (std::size_t i = 0; i < sys.entries.size(); ++i) {
    const auto& e = sys.entries[i];
    os << "f_{" << i + 1 << "} &= " << polynomial_to_latex(e.poly) << ""
       << " && \\langle f_{" << i + 1 << "}, f_{" << i + 1 << "}\\rangle = " << latex_scalar(e.norm);
    os << (i + 1 < sys.entries.size() ? " \\\\\n" : "\n");
  }
  os << "\\end{align*}\n";
  return os.str();
}

}  // namespace canon
