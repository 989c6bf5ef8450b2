// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "canon/oracle.hpp"
#include "support.hpp"

using namespace canon;
using canon::test::group_of;
using canon::test::poly;

namespace {

constexpr double kNormalizedTolerance = 1e-10;
constexpr double kSmallTypeSeconds = 10.0;   // per type of rank <= 3
constexpr double kLargeTypeSeconds = 300.0;  // B4, D5, F4
constexpr double kOracleTotalSeconds = 120.0;
constexpr int kPhiSamples = 200;
constexpr int kPhiMaxDegree = 8;
constexpr int kGroupSamples = 10;
constexpr int kIdealSamples = 50;

struct Case {
  GroupType t;
  int rank;
  int m = 0;
};

std::string label(const Case& c) { return test::spec_of(c.t, c.rank, c.m).label(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
};

int failures = 0;

void run(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!out.pass) ++failures;
  std::printf("%s  %2d  %-38s %7.1fs  %s\n", out.pass ? "PASS" : "FAIL", id, title, secs, out.detail.str().c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string degrees_text(const std::vector<int>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

// Degree-d part of the ideal generated by the seeds, as a spanning list.
std::vector<Polynomial> ideal_span(const SeedSystem& seeds, std::size_t n, int d) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    int rest = d - seeds.degrees[i];
    if (rest < 0) continue;
    for (const auto& m : test::monomials_of_degree(n, rest))
      out.push_back(seeds.polys[i] * Polynomial::monomial(n, seeds.polys[i].field(), m,
                                                          Scalar::from_int(1, seeds.polys[i].field())));
  }
  return out;
}

bool in_ideal(const Polynomial& f, const SeedSystem& seeds, std::size_t n) {
  if (f.is_zero()) return true;
  auto span = ideal_span(seeds, n, f.degree());
  if (span.empty()) return false;
  std::size_t r = rank(coefficient_matrix(span));
  span.push_back(f);
  return rank(coefficient_matrix(span)) == r;
}

Polynomial random_ideal_element(std::mt19937& rng, const SeedSystem& seeds, std::size_t n, Field field) {
  Polynomial f(n, field);
  while (f.is_zero()) {
    int total = seeds.degrees.front() + static_cast<int>(rng() % 5);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      if (seeds.degrees[i] > total || rng() % 2) continue;
      f += seeds.polys[i] * test::random_homogeneous(rng, n, total - seeds.degrees[i], field, 3);
    }
  }
  return f;
}

const std::vector<Case> kCanonicity = {{GroupType::A, 2}, {GroupType::A, 3}, {GroupType::B, 2}, {GroupType::B, 3},
                                       {GroupType::B, 4}, {GroupType::D, 4}, {GroupType::D, 5},
                                       {GroupType::I2, 2, 4}, {GroupType::I2, 2, 6}, {GroupType::H3, 3},
                                       {GroupType::F4, 4}};

const std::vector<Case> kRankAtMost3 = {{GroupType::A, 2}, {GroupType::A, 3}, {GroupType::B, 2}, {GroupType::B, 3},
                                        {GroupType::I2, 2, 4}, {GroupType::I2, 2, 5}, {GroupType::I2, 2, 6},
                                        {GroupType::H3, 3}};

}  // namespace

int main() {
  run(1, "exact canonicity", [](Outcome& out) {
    double worst_small = 0, worst_large = 0;
    for (const auto& c : kCanonicity) {
      auto t0 = std::chrono::steady_clock::now();
      auto g = group_of(c.t, c.rank, c.m);
      auto sys = canonical_system(g, seed_invariants(g));
      auto rep = verify_canonical(sys, g);
      double secs = seconds_since(t0);
      const bool large = c.rank > 3;
      (large ? worst_large : worst_small) = std::max(large ? worst_large : worst_small, secs);
      if (g.field() == Field::real) out.fail(label(c) + " is not exact");
      if (!rep.passed) out.fail(label(c) + " failed verification");
      for (const auto& p : rep.pairings)
        if (p.i != p.j && !p.value.is_zero()) out.fail(label(c) + " nonzero off-diagonal pairing");
      for (const auto& e : sys.entries)
        if (!e.norm.is_positive()) out.fail(label(c) + " nonpositive norm");
      if (secs > (large ? kLargeTypeSeconds : kSmallTypeSeconds)) out.fail(label(c) + " too slow");
    }
    if (out.pass)
      out.detail << kCanonicity.size() << " types; slowest rank<=3 " << worst_small << "s, rank 4-5 " << worst_large
                 << "s";
  });

  run(2, "degree tables", [](Outcome& out) {
    const std::vector<std::pair<Case, std::vector<int>>> expect = {{{GroupType::A, 2}, {2, 3}},
                                                                   {{GroupType::B, 3}, {2, 4, 6}},
                                                                   {{GroupType::D, 4}, {2, 4, 4, 6}},
                                                                   {{GroupType::H3, 3}, {2, 6, 10}},
                                                                   {{GroupType::F4, 4}, {2, 6, 8, 12}}};
    for (const auto& [c, want] : expect) {
      auto g = group_of(c.t, c.rank, c.m);
      for (Mode mode : {Mode::generic, Mode::refined}) {
        auto got = canonical_system(g, seed_invariants(g), mode).degrees();
        if (got != want) out.fail(label(c) + " gave " + degrees_text(got));
      }
      out.detail << label(c) << degrees_text(want) << " ";
    }
  });

  run(3, "oracle equivalence", [](Outcome& out) {
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& c : std::vector<Case>{{GroupType::A, 2}, {GroupType::B, 2}, {GroupType::B, 3},
                                           {GroupType::I2, 2, 6}, {GroupType::H3, 3}, {GroupType::D, 4}}) {
      auto g = group_of(c.t, c.rank, c.m);
      auto built = canonical_system(g, seed_invariants(g));
      auto oracle = flatto_solve(g);
      if (!same_graded_spans(built, oracle)) out.fail(label(c) + " spans differ");
      if (!verify_canonical(built, g).passed) out.fail(label(c) + " construction fails verify");
      if (!verify_canonical(oracle, g).passed) out.fail(label(c) + " oracle fails verify");
    }
    double secs = seconds_since(t0);
    if (secs > kOracleTotalSeconds) out.fail("total runtime " + std::to_string(secs) + "s");
    if (out.pass) out.detail << "6 types agree";
  });

  run(4, "phi properties", [](Outcome& out) {
    std::mt19937 rng(2024);
    std::size_t checks = 0;
    for (const auto& c : kRankAtMost3) {
      auto g = group_of(c.t, c.rank, c.m);
      const auto& elements = g.enumerate();
      const Metric& metric = g.metric();
      const Polynomial delta = antiinvariant_delta(g.roots());
      const auto seeds = seed_invariants(g);
      std::vector<const GroupElement*> ws;
      for (int k = 0; k < kGroupSamples; ++k) ws.push_back(&elements[rng() % elements.size()]);
      int bad_degree = 0, bad_sym = 0, bad_equiv = 0, bad_kernel = 0;
      for (int k = 0; k < kPhiSamples; ++k) {
        int d = 1 + static_cast<int>(rng() % kPhiMaxDegree);
        Polynomial f = test::random_homogeneous(rng, g.rank(), d, g.field());
        Polynomial h = test::random_homogeneous(rng, g.rank(), d, g.field());
        Polynomial pf = phi(f, delta, metric);
        if (!pf.is_zero() && pf.homogeneous_degree() != d) ++bad_degree;
        if (metric.inner(pf, h) != metric.inner(f, phi(h, delta, metric))) ++bad_sym;
        const GroupElement& w = *ws[static_cast<std::size_t>(k) % ws.size()];
        if (act(w.matrix, pf) != phi(act(w.matrix, f), delta, metric)) ++bad_equiv;
        checks += 3;
      }
      for (int k = 0; k < kIdealSamples; ++k) {
        if (!phi(random_ideal_element(rng, seeds, g.rank(), g.field()), delta, metric).is_zero()) ++bad_kernel;
        ++checks;
      }
      if (bad_degree + bad_sym + bad_equiv + bad_kernel)
        out.fail(label(c) + ": degree " + std::to_string(bad_degree) + ", symmetry " + std::to_string(bad_sym) +
                 ", equivariance " + std::to_string(bad_equiv) + ", kernel " + std::to_string(bad_kernel));
    }
    if (out.pass) out.detail << checks << " exact checks over " << kRankAtMost3.size() << " types, 0 failures";
  });

  run(5, "ideal annihilates the antiinvariant", [](Outcome& out) {
    std::mt19937 rng(77);
    std::size_t witnesses = 0;
    auto types = kRankAtMost3;
    types.push_back({GroupType::D, 4});
    for (const auto& c : types) {
      auto g = group_of(c.t, c.rank, c.m);
      const Metric& metric = g.metric();
      const Polynomial delta = antiinvariant_delta(g.roots());
      const auto seeds = seed_invariants(g);
      for (int k = 0; k < kIdealSamples; ++k)
        if (!metric.apply(random_ideal_element(rng, seeds, g.rank(), g.field()), delta).is_zero())
          out.fail(label(c) + ": ideal element does not annihilate");
      // derivatives of seeds, classified by an explicit ideal-membership test
      std::size_t outside = 0;
      std::vector<Polynomial> candidates = {delta};
      for (const auto& h : seeds.polys)
        for (std::size_t j = 0; j < g.rank(); ++j) candidates.push_back(partial(h, j));
      for (const auto& w : candidates) {
        if (w.is_zero()) continue;
        bool member = in_ideal(w, seeds, g.rank());
        bool kills = metric.apply(w, delta).is_zero();
        if (member != kills) out.fail(label(c) + ": membership and annihilation disagree");
        if (!member) ++outside;
      }
      if (outside < 2) out.fail(label(c) + ": too few non-ideal witnesses");
      witnesses += outside;
    }
    // positive-degree invariants lie in the ideal, the harmonic one included
    auto b2 = group_of(GroupType::B, 2);
    Polynomial harmonic = poly(2, {{{4, 0}, 1}, {{2, 2}, -6}, {{0, 4}, 1}});
    if (!apply_diff(harmonic, antiinvariant_delta(b2.roots())).is_zero())
      out.fail("B2 harmonic invariant does not annihilate");
    if (out.pass) out.detail << types.size() << " types, " << witnesses << " non-ideal witnesses detected";
  });

  run(6, "D4 eigenvector and refinement", [](Outcome& out) {
    auto g = group_of(GroupType::D, 4);
    const Polynomial delta = antiinvariant_delta(g.roots());
    const Polynomial prod = poly(4, {{{1, 1, 1, 1}, 1}});
    OneForm df = differential(prod);
    std::vector<Polynomial> image;
    for (const auto& comp : df.components()) image.push_back(phi(comp, delta));
    // x2 x3 x4 is the first component of d(x1 x2 x3 x4)
    Scalar lambda = image[0].coefficient(Monomial({0, 1, 1, 1}));
    if (lambda.is_zero()) out.fail("lambda is zero");
    if (!(OneForm(image) == df.scaled(lambda))) out.fail("d(x1x2x3x4) is not an eigenvector");
    auto lib = monomial_eigenvalue(g);
    if (!lib || !(*lib == lambda)) out.fail("library eigenvalue disagrees");
    auto refined = canonical_system(g, seed_invariants(g), Mode::refined);
    auto generic = canonical_system(g, seed_invariants(g), Mode::generic);
    if (!same_graded_spans(refined, generic)) out.fail("refined and generic spans differ");
    if (!verify_canonical(refined, g).passed) out.fail("refined fails verify");
    if (!verify_canonical(generic, g).passed) out.fail("generic fails verify");
    if (refined.entries[2].poly != prod) out.fail("refined system lacks x1x2x3x4");
    if (out.pass) out.detail << "lambda = " << lambda.to_string();
  });

  run(7, "Euler map and differentials", [](Outcome& out) {
    std::size_t pairs = 0;
    for (const auto& c : kCanonicity) {
      auto g = group_of(c.t, c.rank, c.m);
      for (SeedKind kind : {SeedKind::power_sums, SeedKind::reynolds}) {
        auto seeds = seed_invariants(g, kind);
        for (std::size_t i = 0; i < seeds.size(); ++i) {
          const auto& h = seeds.polys[i];
          if (epsilon(differential(h)) != h.scaled(Scalar(seeds.degrees[i])))
            out.fail(label(c) + ": eps(dh) != deg(h) h");
          for (std::size_t j = 0; j < seeds.size(); ++j) {
            if (seeds.degrees[i] != seeds.degrees[j]) continue;
            ++pairs;
            Scalar lhs = oneform_inner(differential(h), differential(seeds.polys[j]), g.metric());
            if (lhs != Scalar(seeds.degrees[i]) * g.metric().inner(h, seeds.polys[j]))
              out.fail(label(c) + ": (df, dg) != deg(f) <f, g>");
          }
        }
      }
    }
    if (out.pass) out.detail << pairs << " equal-degree pairs";
  });

  run(8, "seed independence", [](Outcome& out) {
    for (const auto& c : std::vector<Case>{{GroupType::B, 3}, {GroupType::D, 4}}) {
      auto g = group_of(c.t, c.rank, c.m);
      auto a = canonical_system(g, seed_invariants(g, SeedKind::power_sums));
      auto b = canonical_system(g, seed_invariants(g, SeedKind::reynolds));
      if (a.polys() == b.polys() && seed_invariants(g, SeedKind::power_sums).polys ==
                                        seed_invariants(g, SeedKind::reynolds).polys)
        out.fail(label(c) + ": the two seed systems coincide, the check is vacuous");
      if (!same_graded_spans(a, b)) out.fail(label(c) + ": spans differ");
    }
    if (out.pass) out.detail << "B3, D4 power sums vs Reynolds averages";
  });

  run(9, "float-normalized view", [](Outcome& out) {
    double worst = 0;
    for (const auto& c : kCanonicity) {
      auto g = group_of(c.t, c.rank, c.m);
      double defect = normalized_defect(canonical_system(g, seed_invariants(g)), g.metric());
      worst = std::max(worst, defect);
      if (!(defect < kNormalizedTolerance)) out.fail(label(c) + " defect " + std::to_string(defect));
    }
    if (out.pass) out.detail << "worst defect " << worst << " (tolerance " << kNormalizedTolerance << ")";
  });

  run(10, "negative control", [](Outcome& out) {
    auto g = group_of(GroupType::B, 2);
    std::vector<Polynomial> raw = {poly(2, {{{2, 0}, 1}, {{0, 2}, 1}}), poly(2, {{{4, 0}, 1}, {{0, 4}, 1}})};
    auto rep = verify_canonical(make_system(g, raw, Construction::external), g);
    if (rep.passed) out.fail("raw seeds passed");
    const Polynomial expected = poly(2, {{{2, 0}, 12}, {{0, 2}, 12}});
    bool reported = false;
    for (const auto& p : rep.pairings)
      if (p.i == 0 && p.j == 1 && !p.ok && p.value == expected) reported = true;
    if (!reported) out.fail("(f1,f2) = 12(x^2+y^2) not reported");
    if (out.pass) out.detail << (rep.failures.empty() ? std::string() : rep.failures.front());
  });

  return failures == 0 ? 0 : 1;
}
