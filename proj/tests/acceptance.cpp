// Acceptance suite: one line of output per criterion, nonzero exit if any
// criterion fails. Each criterion is self-contained apart from the shared
// corpus of family instances and the cached ladder tables.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "p3m/cohomology.hpp"
#include "p3m/complex.hpp"
#include "p3m/families.hpp"
#include "p3m/groebner.hpp"
#include "p3m/invariants.hpp"

using namespace p3m;
using cx::Monad;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> notes;  // failure details
  std::vector<std::string> info;   // always printed

  void req(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      notes.push_back(msg);
    }
  }
  void note(const std::string& msg) { info.push_back(msg); }
};

struct CorpusEntry {
  std::string name;
  Monad m;
  bool validated;  // fiberwise conditions hold
};

struct Corpus {
  std::vector<CorpusEntry> entries;
  Monad nc_good, nc_bad, r4_lf, r4_refl, r4_tf, inst5, ein, g21;
  std::map<std::string, std::map<int, std::array<long long, 4>>> tables;

  const std::map<int, std::array<long long, 4>>& table(const CorpusEntry& e) {
    auto it = tables.find(e.name);
    if (it == tables.end())
      it = tables.emplace(e.name, coh::ladder_table(e.m, -6, 4)).first;
    return it->second;
  }
};

Corpus build_corpus() {
  Corpus c;
  c.nc_good = fam::make_null_correlation({1, 0, 0, 0, 0, 1}).monad;
  c.nc_bad = fam::make_null_correlation({1, 0, 0, 0, 0, 0}).monad;
  fam::ExtensionData lf, refl, tf;
  lf.v3 = {1, 0};
  lf.v4 = {0, 1};
  refl.v3 = {2, 4};
  refl.v4 = {1, 2};
  tf.v1 = {1, 0};
  tf.v2 = {0, 1};
  c.r4_lf = fam::make_rank4_charge1(lf);
  c.r4_refl = fam::make_rank4_charge1(refl);
  c.r4_tf = fam::make_rank4_charge1(tf);
  c.inst5 = fam::make_instanton(5);
  c.ein = fam::make_ein();
  c.g21 = fam::make_modified_instanton(2, 1).monad;
  c.entries = {{"null correlation", c.nc_good, true},
               {"degenerate null correlation", c.nc_bad, false},
               {"charge-1 locally free", c.r4_lf, true},
               {"charge-1 reflexive", c.r4_refl, false},
               {"charge-1 torsion-free", c.r4_tf, false},
               {"charge-5 instanton", c.inst5, true},
               {"Ein", c.ein, true},
               {"G(2,1)", c.g21, true}};
  return c;
}

std::string fmt_h(const std::array<long long, 4>& h) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "(%lld,%lld,%lld,%lld)", h[0], h[1], h[2],
                h[3]);
  return buf;
}

void c1_bott(Check& c) {
  for (int d = -8; d <= 8; ++d) {
    cx::BoundedComplex t;
    t.terms[0] = bundle::LineBundleSum{d};
    auto r = coh::cech_hypercohomology(t, 0);
    for (int i = 0; i < 4; ++i)
      c.req(r.h[i] == bundle::bott_h(d, i),
            "O(" + std::to_string(d) + "): h^" + std::to_string(i) +
                " = " + std::to_string(r.h[i]));
  }
}

void c2_engines(Check& c, Corpus& corp) {
  for (const auto& e : corp.entries) {
    const auto& tab = corp.table(e);
    cx::BoundedComplex t = cx::monad_complex(e.m);
    for (int l = -6; l <= 4; ++l) {
      auto cech = coh::cech_hypercohomology(t, l);
      std::array<long long, 4> ch{cech.h[0], cech.h[1], cech.h[2], cech.h[3]};
      c.req(ch == tab.at(l), e.name + " at l = " + std::to_string(l) +
                                 ": ladder " + fmt_h(tab.at(l)) + " vs Cech " +
                                 fmt_h(ch));
    }
  }
}

void c3_table2(Check& c, Corpus& corp) {
  const auto& tab = corp.table(corp.entries[7]);
  const std::array<long long, 5> h1{0, 0, 1, 5, 8};
  const std::array<long long, 5> h2{8, 5, 1, 0, 0};
  for (int l = -4; l <= 0; ++l) {
    const auto& row = tab.at(l);
    c.req(row[0] == 0, "h^0 at l = " + std::to_string(l));
    c.req(row[1] == h1[l + 4], "h^1 at l = " + std::to_string(l) + ": " +
                                   std::to_string(row[1]));
    c.req(row[2] == h2[l + 4], "h^2 at l = " + std::to_string(l) + ": " +
                                   std::to_string(row[2]));
    c.req(row[3] == 0, "h^3 at l = " + std::to_string(l));
  }
}

void c4_instanton(Check& c, Corpus& corp) {
  const auto& tab = corp.table(corp.entries[5]);
  c.req(tab.at(-1)[0] == 0, "h^0(E(-1)) != 0");
  c.req(tab.at(-2)[1] == 0, "h^1(E(-2)) != 0");
  c.req(tab.at(-2)[2] == 0, "h^2(E(-2)) != 0");
  c.req(tab.at(-3)[3] == 0, "h^3(E(-3)) != 0");
  c.req(tab.at(0)[1] == 8, "h^1(E) = " + std::to_string(tab.at(0)[1]));
}

void c5_rank4_end(Check& c, Corpus& corp) {
  Monad split = fam::widen_with_trivial(fam::make_instanton(1));
  const std::array<std::pair<std::string, Monad>, 2> cases{
      {{"split", split}, {"non-split", corp.r4_lf}}};
  for (const auto& [name, m] : cases) {
    auto t0 = Clock::now();
    auto end = coh::cech_hypercohomology(cx::tensor_total(m, cx::dual_monad(m)), 0);
    c.req(end.h[0] == 5, name + ": h^0(End) = " + std::to_string(end.h[0]));
    auto s2 = coh::cech_hypercohomology(cx::sym_part(m), 0);
    c.req(s2.h[0] == 3 && s2.h[1] == 5 && s2.h[2] == 0,
          name + ": S^2 gave (" + std::to_string(s2.h[0]) + "," +
              std::to_string(s2.h[1]) + "," + std::to_string(s2.h[2]) + ")");
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    c.req(secs < 600.0, name + " exceeded the 10 minute budget");
  }
}

void c6_modified_end(Check& c, Corpus& corp) {
  auto t0 = Clock::now();
  auto r = coh::cech_hypercohomology(
      cx::tensor_total(corp.g21, cx::dual_monad(corp.g21)), 0);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  c.req(r.h[1] == 37, "h^1(End E) = " + std::to_string(r.h[1]));
  c.req(secs < 1800.0, "exceeded the 30 minute budget");
}

void c7_classifier(Check& c) {
  std::mt19937_64 rng(20260824);
  std::uniform_int_distribution<int> dist(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    fam::ExtensionData d;
    for (auto* v : {&d.v1, &d.v2, &d.v3, &d.v4})
      for (auto& x : *v) x = dist(rng);
    auto cls = fam::classify_extension(d);
    auto oracle = gb::fiberwise_auto(fam::make_rank4_charge1(d).alpha);
    bool everywhere = oracle.kind == gb::VerdictKind::Everywhere;
    c.req(everywhere == (cls.kind == fam::ExtKind::LocallyFree),
          "trial " + std::to_string(trial) + ": classifier and oracle differ");
    if (cls.kind == fam::ExtKind::ReflexivePoint && oracle.point) {
      const auto& p = *oracle.point;
      const auto& q = cls.point;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          c.req(p[i] * q[j] == p[j] * q[i],
                "trial " + std::to_string(trial) + ": witness mismatch");
    }
  }
  fam::ExtensionData lf, refl, tf;
  lf.v3 = {1, 0};
  lf.v4 = {0, 1};
  refl.v3 = {2, 4};
  refl.v4 = {1, 2};
  tf.v1 = {1, 0};
  tf.v2 = {0, 1};
  c.req(fam::classify_extension(lf).kind == fam::ExtKind::LocallyFree,
        "locally free case misclassified");
  auto rv = fam::classify_extension(refl);
  c.req(rv.kind == fam::ExtKind::ReflexivePoint, "reflexive case misclassified");
  c.req(rv.point == std::array<la::Rat, 4>{0, 0, 1, -2},
        "reflexive witness is not [0:0:1:-2]");
  c.req(fam::classify_extension(tf).kind == fam::ExtKind::TorsionFreeLine,
        "torsion-free case misclassified");
}

void c8_symplectic(Check& c, Corpus& corp) {
  Monad split = fam::widen_with_trivial(fam::make_instanton(1));
  for (const auto& [name, m] : std::array<std::pair<std::string, Monad>, 2>{
           {{"split", split}, {"non-split", corp.r4_lf}}}) {
    auto cert = fam::solve_symplectic(m);
    c.req(cert.has_value(), name + ": solver found no certificate");
    if (cert) c.req(fam::verify_symplectic(m, *cert),
                    name + ": certificate fails verification");
  }
  // the printed candidate J from the literature, verify-only
  la::RationalMatrix J(6, 6);
  const int upper[][2] = {{0, 1}, {2, 3}, {2, 4}, {3, 5}};
  for (const auto& e : upper) {
    J.add_entry(e[0], e[1], 1);
    J.add_entry(e[1], e[0], -1);
  }
  bool any_ok = false;
  for (int g : {1, -1}) {
    fam::SymplecticCert cand{la::Rat(g), la::Rat(-g), J};
    if (fam::verify_symplectic(corp.r4_lf, cand)) any_ok = true;
  }
  c.note(std::string("printed J verdict: identities ") +
         (any_ok ? "hold" : "fail") + " for g = +/-1");
}

void c9_chern_euler(Check& c, Corpus& corp) {
  for (int a = 2; a <= 4; ++a)
    for (int k = 1; k <= 2; ++k) {
      Monad shape;
      shape.A = bundle::LineBundleSum{-a}.concat(
          bundle::LineBundleSum::repeated(-1, k));
      shape.B = bundle::LineBundleSum::repeated(0, 4 + 2 * k);
      shape.C = bundle::LineBundleSum::repeated(1, k).concat(
          bundle::LineBundleSum{a});
      auto cd = inv::chern(shape);
      c.req(cd.rank == 2 && cd.c1 == 0 && cd.c2 == a * a + k && cd.c3 == 0,
            "G(" + std::to_string(a) + "," + std::to_string(k) +
                ") chern mismatch");
    }
  for (const auto& e : corp.entries) {
    auto cd = inv::chern(e.m);
    const auto& tab = corp.table(e);
    for (int l = -6; l <= 4; ++l) {
      const auto& h = tab.at(l);
      c.req(inv::euler_char(cd, l) == h[0] - h[1] + h[2] - h[3],
            e.name + ": Euler characteristic mismatch at l = " +
                std::to_string(l));
    }
  }
}

void c10_spectrum(Check& c, Corpus& corp) {
  struct Row {
    int idx;
    std::multiset<int> spec;
    int alpha;
  };
  for (const auto& row : {Row{5, {0, 0, 0, 0, 0}, 0},
                          Row{6, {-2, -1, 0, 1, 2}, 1},
                          Row{7, {-1, 0, 0, 0, 1}, 1}}) {
    const auto& e = corp.entries[row.idx];
    const auto& tab = corp.table(e);
    std::map<int, long long> h1;
    for (int l = -2; l >= -6; --l) h1[l] = tab.at(l)[1];
    auto spec = inv::spectrum_from_h1(h1, 5);
    c.req(spec.values == row.spec, e.name + ": spectrum mismatch");
    c.req(inv::alpha_invariant(e.m) == row.alpha,
          e.name + ": alpha invariant mismatch");
  }
  const auto& g = corp.table(corp.entries[7]);
  c.req(g.at(-2)[1] == 1, "G(2,1): h^1(E(-2)) != 1");
  c.req(g.at(-3)[1] == 0, "G(2,1): h^1(E(-3)) != 0");
}

void c11_generators(Check& c, Corpus& corp) {
  c.req(coh::h1_module_generators(corp.g21, -4, 2) ==
            std::multiset<int>{-2, -1},
        "G(2,1) generator degrees are not {-2, -1}");
  c.req(coh::h1_module_generators(corp.nc_good, -2, 2) ==
            std::multiset<int>{-1},
        "null correlation generator degrees are not {-1}");
}

void c12_dimensions(Check& c) {
  const long long expect[] = {37, 76, 135};
  for (int a = 2; a <= 4; ++a) {
    auto d = inv::dim_g_a1(a);
    c.req(d.formula_value == expect[a - 2],
          "a = " + std::to_string(a) + ": formula gave " +
              std::to_string(d.formula_value));
    c.req(d.identity_ok, "a = " + std::to_string(a) + ": breakdown identity");
    c.req(d.epsilon == (a == 3 ? 1 : 0), "epsilon wrong at a = " +
                                             std::to_string(a));
  }
  auto d4 = inv::dim_g_a1(4);
  c.req(d4.lower_bound == 133 && d4.exceeds_bound, "135 > 133 not certified");
}

void c13_ext(Check& c, Corpus& corp) {
  auto r = coh::ladder_cohomology(corp.nc_bad, -4);
  c.req(r.h[2] == 2, "h^2(N_l(-4)) = " + std::to_string(r.h[2]));
  c.req(2 * r.h[2] == 4, "dim Ext^1(N_l, 2 O) != 4");
}

void c14_degeneracy(Check& c, Corpus& corp) {
  for (const auto& e : corp.entries) {
    for (const auto* mat : {&e.m.alpha, &e.m.beta}) {
      bool is_alpha = mat == &e.m.alpha;
      auto minors = gb::maximal_minors(*mat);
      auto basis = gb::buchberger(minors.gens);
      c.req(gb::is_groebner_basis(basis),
            e.name + ": computed basis fails the S-polynomial test");
      bool empty = gb::projective_empty(minors);
      // beta stays surjective in every corpus instance; only alpha degenerates
      bool expect_empty = e.validated || !is_alpha;
      c.req(empty == expect_empty,
            e.name + (is_alpha ? " alpha" : " beta") + ": degeneracy locus " +
                (empty ? "empty" : "non-empty"));
    }
    if (!e.validated) {
      auto v = gb::fiberwise_auto(e.m.alpha);
      c.req(v.kind != gb::VerdictKind::Everywhere,
            e.name + ": oracle missed the degeneracy");
      c.req(v.point.has_value() || v.point_mod_p.has_value(),
            e.name + ": no witness point reported");
    }
  }
}

}  // namespace

int main() {
  Corpus corp;
  try {
    corp = build_corpus();
  } catch (const std::exception& e) {
    std::printf("corpus construction failed: %s\n", e.what());
    return 1;
  }

  struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> run;
    double budget = 0.0;  // seconds; 0 = untimed
  };
  const std::vector<Criterion> criteria{
      {1, "Bott conformance for O(d), d in [-8, 8]",
       [&](Check& c) { c1_bott(c); }, 60.0},
      {2, "ladder and Cech engines agree on the corpus at twists [-6, 4]",
       [&](Check& c) { c2_engines(c, corp); }},
      {3, "G(2,1) twisted cohomology table, l = -4..0",
       [&](Check& c) { c3_table2(c, corp); }, 120.0},
      {4, "charge-5 instanton vanishings and h^1(E) = 8",
       [&](Check& c) { c4_instanton(c, corp); }},
      {5, "rank-4 charge-1: h^0(End) = 5 and S^2 = (3, 5, 0)",
       [&](Check& c) { c5_rank4_end(c, corp); }},
      {6, "G(2,1): h^1(End E) = 37",
       [&](Check& c) { c6_modified_end(c, corp); }, 1800.0},
      {7, "extension classifier vs degeneracy oracle, 100 cases + witnesses",
       [&](Check& c) { c7_classifier(c); }},
      {8, "symplectic certificates; printed J verified in verify-only mode",
       [&](Check& c) { c8_symplectic(c, corp); }},
      {9, "Chern classes (2, 0, a^2 + k, 0) and Euler characteristics",
       [&](Check& c) { c9_chern_euler(c, corp); }},
      {10, "spectra and alpha invariants of the three components",
       [&](Check& c) { c10_spectrum(c, corp); }},
      {11, "H^1 module generator degrees",
       [&](Check& c) { c11_generators(c, corp); }},
      {12, "dimension formulas 37 / 76 / 135",
       [&](Check& c) { c12_dimensions(c); }},
      {13, "h^2(N_l(-4)) = 2 and dim Ext^1 = 4",
       [&](Check& c) { c13_ext(c, corp); }},
      {14, "degeneracy certificates and Groebner bases for the corpus",
       [&](Check& c) { c14_degeneracy(c, corp); }},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto t0 = Clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.req(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (cr.budget > 0.0 && secs > cr.budget)
      c.req(false, "exceeded the time budget of " +
                       std::to_string(static_cast<int>(cr.budget)) + " s");
    std::printf("criterion %2d: %s  %s  (%.1f s)\n", cr.id,
                c.ok ? "PASS" : "FAIL", cr.title, secs);
    for (const auto& s : c.info) std::printf("              %s\n", s.c_str());
    for (const auto& s : c.notes) std::printf("              %s\n", s.c_str());
    if (!c.ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
