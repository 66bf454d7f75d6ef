#include <doctest.h>

#include "p3m/cohomology.hpp"
#include "p3m/families.hpp"
#include "p3m/invariants.hpp"

using namespace p3m;
using namespace p3m::inv;
using cx::Monad;
using fam::make_ein;
using fam::make_instanton;
using fam::make_modified_instanton;
using fam::make_null_correlation;

TEST_CASE("chern classes of the standard shapes") {
  ChernData inst = chern(make_instanton(5));
  CHECK(inst.rank == 2);
  CHECK(inst.c1 == 0);
  CHECK(inst.c2 == 5);
  CHECK(inst.c3 == 0);

  ChernData ein = chern(make_ein());
  CHECK(ein.rank == 2);
  CHECK(ein.c1 == 0);
  CHECK(ein.c2 == 5);
  CHECK(ein.c3 == 0);

  // G(a,k) shapes give c2 = a^2 + k without needing the maps
  for (int a = 2; a <= 4; ++a)
    for (int k = 1; k <= 2; ++k) {
      Monad shape;
      shape.A = bundle::LineBundleSum{-a}.concat(
          bundle::LineBundleSum::repeated(-1, k));
      shape.B = bundle::LineBundleSum::repeated(0, 4 + 2 * k);
      shape.C =
          bundle::LineBundleSum::repeated(1, k).concat(bundle::LineBundleSum{a});
      ChernData cd = chern(shape);
      CHECK(cd.rank == 2);
      CHECK(cd.c1 == 0);
      CHECK(cd.c2 == a * a + k);
      CHECK(cd.c3 == 0);
    }
}

TEST_CASE("euler characteristic formula") {
  ChernData five{2, 0, 5, 0};
  CHECK(euler_char(five, 0) == -8);
  CHECK(euler_char(five, -2) == 0);
  CHECK(euler_char(ChernData{4, 0, 1, 0}, 0) == 2);
  CHECK_THROWS_AS(euler_char(ChernData{2, 1, 5, 0}, 0), NotImplemented);
}

TEST_CASE("euler characteristic matches the ladder alternating sum") {
  for (const Monad& m :
       {make_instanton(3), make_ein(), make_null_correlation({1, 0, 0, 0, 0, 1}).monad}) {
    ChernData cd = chern(m);
    for (int l = -6; l <= 4; ++l) {
      auto h = coh::ladder_cohomology(m, l).h;
      CHECK(euler_char(cd, l) == h[0] - h[1] + h[2] - h[3]);
    }
  }
}

TEST_CASE("spectrum recovery from h^1 values") {
  Spectrum inst = spectrum_from_h1({{-2, 0}, {-3, 0}}, 5);
  CHECK(inst.values == std::multiset<int>{0, 0, 0, 0, 0});

  Spectrum g21 = spectrum_from_h1({{-2, 1}, {-3, 0}}, 5);
  CHECK(g21.values == std::multiset<int>{-1, 0, 0, 0, 1});

  Spectrum ein = spectrum_from_h1({{-2, 3}, {-3, 1}, {-4, 0}}, 5);
  CHECK(ein.values == std::multiset<int>{-2, -1, 0, 1, 2});

  CHECK_THROWS_AS(spectrum_from_h1({{-2, 1}, {-3, 1}}, 5), Inconsistent);
  CHECK_THROWS_AS(spectrum_from_h1({{-2, 0}, {-3, 1}, {-4, 0}}, 5), Inconsistent);
}

TEST_CASE("alpha invariant of the three families") {
  CHECK(alpha_invariant(make_instanton(5)) == 0);
  CHECK(alpha_invariant(make_ein()) == 1);
  CHECK(alpha_invariant(make_modified_instanton(2, 1).monad) == 1);
  CHECK_THROWS_AS(alpha_invariant(fam::widen_with_trivial(make_instanton(1))),
                  ShapeError);
}

TEST_CASE("stability probe") {
  auto g21 = stability_probe(make_modified_instanton(2, 1).monad);
  CHECK(g21.h0_E == 0);
  CHECK(g21.verdict == StabilityVerdict::stable);

  auto inst = stability_probe(make_instanton(5));
  CHECK(inst.verdict == StabilityVerdict::stable);

  Monad trivial;
  trivial.B = bundle::LineBundleSum::repeated(0, 2);
  trivial.alpha = bundle::GradedMatrix(trivial.A, trivial.B);
  trivial.beta = bundle::GradedMatrix(trivial.B, trivial.C);
  auto t = stability_probe(trivial);
  CHECK(t.h0_E == 2);
  // not stable; h^0(E(-1)) = 0 still certifies mu-semistability
  CHECK(t.verdict == StabilityVerdict::semistable);

  Monad unstable;  // O(-1) + O(1) has sections even after twisting down
  unstable.B = bundle::LineBundleSum{-1, 1};
  unstable.alpha = bundle::GradedMatrix(unstable.A, unstable.B);
  unstable.beta = bundle::GradedMatrix(unstable.B, unstable.C);
  CHECK(stability_probe(unstable).verdict == StabilityVerdict::undetermined);
}

TEST_CASE("B(5) classifier on the three families") {
  auto inst = classify_b5(make_instanton(5));
  CHECK(inst.component == Component::Instanton);
  CHECK(inst.dimension == 37);
  CHECK(inst.alpha == 0);
  CHECK(inst.spectrum.values == std::multiset<int>{0, 0, 0, 0, 0});

  auto ein = classify_b5(make_ein());
  CHECK(ein.component == Component::Ein);
  CHECK(ein.dimension == 40);
  CHECK(ein.alpha == 1);
  CHECK(ein.spectrum.values == std::multiset<int>{-2, -1, 0, 1, 2});
  CHECK(ein.describe().find("Ein component, dimension 40") == 0);

  auto g21 = classify_b5(make_modified_instanton(2, 1).monad);
  CHECK(g21.component == Component::ModifiedInstanton);
  CHECK(g21.dimension == 37);
  CHECK(g21.alpha == 1);
  CHECK(g21.spectrum.values == std::multiset<int>{-1, 0, 0, 0, 1});

  CHECK_THROWS_AS(classify_b5(make_instanton(3)), NotCharge5);
}

TEST_CASE("G(2,1) satisfies the table's h^1 pins") {
  Monad m = make_modified_instanton(2, 1).monad;
  CHECK(coh::ladder_cohomology(m, -2).h[1] == 1);
  CHECK(coh::ladder_cohomology(m, -3).h[1] == 0);
}

TEST_CASE("dimension formula for G(a,1)") {
  auto d2 = dim_g_a1(2);
  CHECK(d2.formula_value == 37);
  CHECK(d2.h0_N_a == 16);
  CHECK(d2.breakdown == 37);
  CHECK(d2.identity_ok);
  CHECK(d2.epsilon == 0);

  auto d3 = dim_g_a1(3);
  CHECK(d3.formula_value == 76);
  CHECK(d3.epsilon == 1);
  CHECK(d3.h1_end_prediction == 77);
  CHECK(d3.identity_ok);

  auto d4 = dim_g_a1(4);
  CHECK(d4.formula_value == 135);
  CHECK(d4.lower_bound == 133);
  CHECK(d4.exceeds_bound);

  for (int a = 2; a <= 8; ++a) CHECK(dim_g_a1(a).identity_ok);
}
