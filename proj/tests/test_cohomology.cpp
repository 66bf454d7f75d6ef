#include <doctest.h>

#include "p3m/cohomology.hpp"
#include "p3m/families.hpp"

using namespace p3m;
using coh::ladder_cohomology;
using coh::ladder_table;
using cx::Monad;
using fam::make_null_correlation;

namespace {

Monad null_correlation() {
  return make_null_correlation({1, 0, 0, 0, 0, 1}).monad;
}

long long euler_poly(long long c2, int l) {
  // rank 2, c1 = 0: chi(E(l)) = 2 binom(l+3,3) - c2 (l+2), as a polynomial
  long long b = static_cast<long long>(l + 1) * (l + 2) * (l + 3) / 6;
  return 2 * b - c2 * (l + 2);
}

}  // namespace

TEST_CASE("null correlation bundle: cohomology table") {
  Monad m = null_correlation();
  auto t = ladder_table(m, -4, 1);
  CHECK(t[0] == std::array<long long, 4>{0, 0, 0, 0});
  CHECK(t[-1] == std::array<long long, 4>{0, 1, 0, 0});
  CHECK(t[-2] == std::array<long long, 4>{0, 0, 0, 0});
  CHECK(t[-3] == std::array<long long, 4>{0, 0, 1, 0});
  CHECK(t[-4] == std::array<long long, 4>{0, 0, 0, 0});
  CHECK(t[1][0] == 5);  // h^0(N(1)) = 5
}

TEST_CASE("ladder satisfies Serre duality and the Euler polynomial") {
  Monad m = fam::make_instanton(2);
  auto t = ladder_table(m, -6, 2);
  for (int l = -6; l <= 2; ++l) {
    long long chi = t[l][0] - t[l][1] + t[l][2] - t[l][3];
    CHECK(chi == euler_poly(2, l));
    int ld = -4 - l;
    if (ld >= -6 && ld <= 2)
      for (int i = 0; i < 4; ++i) CHECK(t[l][i] == t[ld][3 - i]);
  }
}

TEST_CASE("degenerate correlation sheaf has h^2(-4) = 2") {
  auto nc = make_null_correlation({1, 0, 0, 0, 0, 0});
  REQUIRE_FALSE(nc.locally_free);
  auto r = ladder_cohomology(nc.monad, -4);
  CHECK(r.h[2] == 2);
}

TEST_CASE("charge-5 instanton: the four vanishings and h^1 = 8") {
  Monad m = fam::make_instanton(5);
  auto r0 = ladder_cohomology(m, 0);
  CHECK(r0.h[0] == 0);
  CHECK(r0.h[1] == 8);
  CHECK(r0.h[2] == 0);
  CHECK(r0.h[3] == 0);
  auto rm2 = ladder_cohomology(m, -2);
  CHECK(rm2.h[1] == 0);  // trivial spectral table at the balanced twist
}

TEST_CASE("presentations carry the stated dimensions") {
  Monad m = null_correlation();
  auto r = ladder_cohomology(m, -1);
  for (int i = 0; i < 4; ++i)
    CHECK(static_cast<long long>(r.pres[i].model.dim()) == r.h[i]);
  CHECK(r.pres[1].ambient == "H0(C(l))");
}

TEST_CASE("sheaf-level injectivity of alpha is enforced") {
  Monad m = null_correlation();
  for (int i = 0; i < 4; ++i)
    m.alpha.set(i, 0, ring::HomogPoly(1));  // zero map, still a complex
  CHECK_THROWS_AS(ladder_cohomology(m, 1), coh::PreconditionError);
}

TEST_CASE("H^1 module generators of the null correlation bundle") {
  Monad m = null_correlation();
  auto gens = coh::h1_module_generators(m, -2, 2);
  CHECK(gens == std::multiset<int>{-1});
  CHECK_THROWS_AS(coh::h1_module_generators(m, -1, 2), coh::RangeTooSmall);
}
