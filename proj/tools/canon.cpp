// canon: build, check and compare canonical systems of basic invariants.
//
// Machine output goes to stdout as JSON (or LaTeX / a short summary for
// build); diagnostics go to stderr. Exit status is 0 only on success.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "canon/canonical.hpp"
#include "canon/oracle.hpp"
#include "canon/seeds.hpp"
#include "canon/serialize.hpp"

namespace {

using namespace canon;

struct GroupArgs {
  std::string type;
  int rank = 0;
  int m = 0;
  std::string field = "auto";
  bool allow_large = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--type", type, "A, B, D, I2, H, F or E")->required();
    cmd->add_option("--rank", rank, "rank (2 for I2)");
    cmd->add_option("--m", m, "dihedral order parameter for I2");
    cmd->add_option("--field", field, "auto, Q, Qsqrt5 or float")
        ->check(CLI::IsMember({"auto", "Q", "Qsqrt5", "float"}));
    cmd->add_flag("--allow-large", allow_large, "permit H4 and E6");
  }

  GroupSpec spec() const {
    // "B3", "H4", "E8" carry the rank in the label
    std::string letters = type;
    int r = rank;
    if (type != "I2") {
      auto pos = type.find_first_of("0123456789");
      if (pos != std::string::npos) {
        letters = type.substr(0, pos);
        int from_label = std::stoi(type.substr(pos));
        if (r != 0 && r != from_label)
          throw UnsupportedGroup("--type " + type + " conflicts with --rank " + std::to_string(r));
        r = from_label;
      }
    }
    if (letters == "I") letters = "I2";
    return GroupSpec::make(parse_group_type(letters, r), r, m, parse_field_choice(field), allow_large);
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SeedSystem load_seeds(const ReflectionGroup& group, const std::string& selector) {
  if (selector == "power-sums") return seed_invariants(group, SeedKind::power_sums);
  if (selector == "reynolds") return seed_invariants(group, SeedKind::reynolds);
  if (selector.rfind("file:", 0) == 0) {
    json j = json::parse(read_file(selector.substr(5)));
    const json& list = j.is_object() && j.contains("entries") ? j["entries"] : j;
    std::vector<Polynomial> polys;
    for (const auto& item : list) {
      Polynomial p = polynomial_from_json(item.contains("poly") ? item["poly"] : item);
      if (p.num_vars() != group.rank())
        throw InvalidSeeds("seed polynomial has " + std::to_string(p.num_vars()) + " variables, group rank is " +
                           std::to_string(group.rank()));
      polys.push_back(p.in_field(group.field()));
    }
    return user_seeds(group, std::move(polys));
  }
  throw std::invalid_argument("unknown seed selector '" + selector + "'");
}

void print_summary(const InvariantSystem& sys, const VerificationReport* rep, std::ostream& os) {
  os << sys.group.label() << " over " << field_name(sys.group.field) << ", construction "
     << construction_name(sys.provenance) << "\n";
  for (std::size_t i = 0; i < sys.entries.size(); ++i) {
    const auto& e = sys.entries[i];
    os << "  f" << i + 1 << "  degree " << e.degree << "  c = " << e.norm.to_string() << "  ("
       << e.poly.size() << " terms)\n";
  }
  if (rep) os << "verification: " << (rep->passed ? "passed" : "FAILED") << "\n";
}

int cmd_build(const GroupArgs& g, const std::string& seed_sel, const std::string& mode_name,
              const std::string& format, bool verify) {
  GroupSpec spec = g.spec();
  ReflectionGroup group = ReflectionGroup::build(spec);
  SeedSystem seeds = load_seeds(group, seed_sel);
  Mode mode = mode_name == "refined" ? Mode::refined : Mode::generic;
  InvariantSystem sys = canonical_system(group, seeds, mode);

  std::optional<VerificationReport> rep;
  if (verify) {
    rep = verify_canonical(sys, group);
    sys.verified = rep->passed;
    for (const auto& f : rep->failures) std::cerr << "verify: " << f << "\n";
  }

  if (format == "latex") {
    std::cout << system_to_latex(sys);
  } else if (format == "summary") {
    print_summary(sys, rep ? &*rep : nullptr, std::cout);
  } else {
    json out = system_to_json(sys);
    out["seeds"] = seed_kind_name(seeds.provenance);
    out["mode"] = mode_name;
    if (spec.field == Field::real) out["exact"] = false;
    std::cout << out.dump(2) << "\n";
  }
  return (!rep || rep->passed) ? 0 : 1;
}

int cmd_verify(const std::string& path, bool allow_large) {
  json j = json::parse(read_file(path));
  // the opt-in was already given when the file was produced
  (void)allow_large;
  InvariantSystem sys = system_from_json(j);
  ReflectionGroup group = ReflectionGroup::build(sys.group);
  VerificationReport rep = verify_canonical(sys, group);
  std::cout << report_to_json(rep).dump(2) << "\n";
  for (const auto& f : rep.failures) std::cerr << "verify: " << f << "\n";
  return rep.passed ? 0 : 1;
}

int cmd_delta(const GroupArgs& g, const std::string& format) {
  RootSystem rs = build_root_system(g.spec());
  Polynomial delta = antiinvariant_delta(rs);
  if (format == "latex") {
    std::cout << "\\Delta = " << polynomial_to_latex(delta) << "\n";
    return 0;
  }
  json out = {{"group", group_to_json(rs.spec)},
              {"root_system", root_system_to_json(rs)},
              {"degree", delta.degree()},
              {"delta", polynomial_to_json(delta)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_oracle_compare(const GroupArgs& g, const std::string& seed_sel, const std::string& mode_name) {
  GroupSpec spec = g.spec();
  ReflectionGroup group = ReflectionGroup::build(spec);
  InvariantSystem main_sys =
      canonical_system(group, load_seeds(group, seed_sel), mode_name == "refined" ? Mode::refined : Mode::generic);
  InvariantSystem oracle_sys = flatto_solve(group);
  bool spans = same_graded_spans(main_sys, oracle_sys);
  VerificationReport ra = verify_canonical(main_sys, group);
  VerificationReport rb = verify_canonical(oracle_sys, group);
  json out = {{"group", group_to_json(spec)},
              {"same_spans", spans},
              {"construction_verified", ra.passed},
              {"oracle_verified", rb.passed},
              {"oracle", system_to_json(oracle_sys)}};
  std::cout << out.dump(2) << "\n";
  bool ok = spans && ra.passed && rb.passed;
  if (!ok) std::cerr << "oracle-compare: systems disagree or fail verification\n";
  return ok ? 0 : 1;
}

template <class F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_bench(const std::vector<std::string>& labels, bool allow_large) {
  json rows = json::array();
  for (const auto& label : labels) {
    GroupArgs g;
    g.type = label;
    g.allow_large = allow_large;
    if (label.rfind("I2(", 0) == 0) {
      g.type = "I2";
      g.m = std::stoi(label.substr(3));
    }
    GroupSpec spec = g.spec();
    ReflectionGroup group = ReflectionGroup::build(spec);
    Polynomial delta = group.zero();
    double t_delta = seconds([&] { delta = antiinvariant_delta(group.roots()); });
    SeedSystem seeds = seed_invariants(group);
    Polynomial top = seeds.polys.back();
    double t_phi = seconds([&] { (void)phi(top, delta, group.metric()); });
    InvariantSystem sys;
    double t_build = seconds([&] { sys = canonical_system(group, seeds, Mode::refined, delta); });
    bool ok = false;
    double t_verify = seconds([&] { ok = verify_canonical(sys, group).passed; });
    rows.push_back({{"group", spec.label()},
                    {"delta_seconds", t_delta},
                    {"phi_seconds", t_phi},
                    {"build_seconds", t_build},
                    {"verify_seconds", t_verify},
                    {"verified", ok}});
    std::cerr << spec.label() << " done\n";
  }
  std::cout << json{{"bench", rows}}.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical systems of basic invariants for finite reflection groups"};
  app.require_subcommand(1);

  GroupArgs build_g, delta_g, oracle_g;
  std::string seed = "power-sums", mode = "generic", format = "json", oracle_seed = "power-sums",
              oracle_mode = "generic", delta_format = "json";
  bool verify = false;

  auto* build = app.add_subcommand("build", "construct a canonical system");
  build_g.attach(build);
  build->add_option("--seed", seed, "power-sums, reynolds or file:<path>");
  build->add_option("--mode", mode, "generic or refined")->check(CLI::IsMember({"generic", "refined"}));
  build->add_option("--format", format, "json, latex or summary")
      ->check(CLI::IsMember({"json", "latex", "summary"}));
  build->add_flag("--verify", verify, "check every pairing before emitting");

  std::string verify_path;
  bool verify_allow = false;
  auto* ver = app.add_subcommand("verify", "re-check a serialized system");
  ver->add_option("file", verify_path, "system JSON")->required();
  ver->add_flag("--allow-large", verify_allow, "accepted for symmetry with build");

  auto* delta = app.add_subcommand("delta", "print the product of positive root forms");
  delta_g.attach(delta);
  delta->add_option("--format", delta_format, "json or latex")->check(CLI::IsMember({"json", "latex"}));

  auto* oracle = app.add_subcommand("oracle-compare", "compare against the direct PDE solve");
  oracle_g.attach(oracle);
  oracle->add_option("--seed", oracle_seed, "power-sums, reynolds or file:<path>");
  oracle->add_option("--mode", oracle_mode, "generic or refined")->check(CLI::IsMember({"generic", "refined"}));

  std::vector<std::string> bench_groups = {"A3", "B3", "D4", "H3", "B4", "F4"};
  bool bench_allow = false;
  auto* bench = app.add_subcommand("bench", "time delta, phi and full builds");
  bench->add_option("--groups", bench_groups, "labels such as B3, D4, I2(6)");
  bench->add_flag("--allow-large", bench_allow, "permit H4 and E6");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(build_g, seed, mode, format, verify);
    if (ver->parsed()) return cmd_verify(verify_path, verify_allow);
    if (delta->parsed()) return cmd_delta(delta_g, delta_format);
    if (oracle->parsed()) return cmd_oracle_compare(oracle_g, oracle_seed, oracle_mode);
    if (bench->parsed()) return cmd_bench(bench_groups, bench_allow);
  } catch (const UnsupportedGroup& e) {
    std::cerr << "unsupported group: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
