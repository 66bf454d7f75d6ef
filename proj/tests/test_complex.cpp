#include <doctest.h>

#include "p3m/complex.hpp"

using namespace p3m::cx;
using p3m::bundle::GradedMatrix;
using p3m::bundle::LineBundleSum;
using p3m::ring::parse_poly;

namespace {

Monad null_correlation() {
  Monad m;
  m.A = LineBundleSum{-1};
  m.B = LineBundleSum::repeated(0, 4);
  m.C = LineBundleSum{1};
  m.alpha = GradedMatrix(m.A, m.B);
  const char* col[4] = {"y", "-x", "w", "-z"};
  for (int i = 0; i < 4; ++i) m.alpha.set(i, 0, parse_poly(col[i]));
  m.beta = GradedMatrix(m.B, m.C);
  const char* row[4] = {"x", "y", "z", "w"};
  for (int j = 0; j < 4; ++j) m.beta.set(0, j, parse_poly(row[j]));
  return m;
}

Monad rank4_charge1() {
  Monad m;
  m.A = LineBundleSum{-1};
  m.B = LineBundleSum::repeated(0, 6);
  m.C = LineBundleSum{1};
  m.alpha = GradedMatrix(m.A, m.B);
  const char* col[6] = {"y", "-x", "0", "0", "z", "w"};
  for (int i = 0; i < 6; ++i) m.alpha.set(i, 0, parse_poly(col[i], 1));
  m.beta = GradedMatrix(m.B, m.C);
  const char* row[6] = {"x", "y", "z", "w", "0", "0"};
  for (int j = 0; j < 6; ++j) m.beta.set(0, j, parse_poly(row[j], 1));
  return m;
}

std::size_t total_rank(const BoundedComplex& c, int p) {
  return c.term(p).rank();
}

}  // namespace

TEST_CASE("null correlation monad validates at both levels") {
  Monad m = null_correlation();
  auto alg = validate_monad(m, Level::algebraic);
  CHECK(alg.all_ok());
  auto fib = validate_monad(m, Level::fiberwise);
  CHECK(fib.all_ok());
}

TEST_CASE("broken composition is reported with the offending entry") {
  Monad m = null_correlation();
  m.alpha.set(2, 0, parse_poly("z"));  // now beta o alpha = 2*z*w - ...
  auto rep = validate_monad(m, Level::algebraic);
  CHECK_FALSE(rep.all_ok());
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == "beta o alpha = 0" && !c.ok) found = true;
  CHECK(found);
}

TEST_CASE("degenerate alpha fails fiberwise validation with a witness") {
  Monad m = null_correlation();
  m.alpha.set(2, 0, parse_poly("0", 1));
  m.alpha.set(3, 0, parse_poly("0", 1));
  auto alg = validate_monad(m, Level::algebraic);
  CHECK(alg.all_ok());  // still a complex
  auto fib = validate_monad(m, Level::fiberwise);
  CHECK_FALSE(fib.all_ok());
  for (const auto& c : fib.checks)
    if (c.name == "alpha fiberwise injective") {
      CHECK_FALSE(c.ok);
      CHECK(c.detail.find("rank drops") != std::string::npos);
    }
}

TEST_CASE("tensor square of the null correlation monad") {
  Monad m = null_correlation();
  BoundedComplex t = tensor_total(m, m);
  CHECK(total_rank(t, -2) == 1);
  CHECK(total_rank(t, -1) == 8);
  CHECK(total_rank(t, 0) == 18);  // 16 + 2 crossing terms
  CHECK(total_rank(t, 1) == 8);
  CHECK(total_rank(t, 2) == 1);
  CHECK(t.term(-2).twists == std::vector<int>{-2});
  CHECK(t.term(2).twists == std::vector<int>{2});
  for (int tw : t.term(-1).twists) CHECK(tw == -1);
  CHECK(t.d_squared_zero());
}

TEST_CASE("tensor term ranks multiply") {
  Monad m = rank4_charge1();
  Monad d = dual_monad(m);
  BoundedComplex t = tensor_total(m, d);
  auto rk = [&](const Monad& mm, int i) {
    return i == -1 ? mm.A.rank() : i == 0 ? mm.B.rank() : mm.C.rank();
  };
  for (int p = -2; p <= 2; ++p) {
    std::size_t want = 0;
    for (int i = -1; i <= 1; ++i)
      if (p - i >= -1 && p - i <= 1) want += rk(m, i) * rk(d, p - i);
    CHECK(total_rank(t, p) == want);
  }
  CHECK(t.d_squared_zero());
}

TEST_CASE("dual monad is an involution and keeps self-dual shapes") {
  Monad m = null_correlation();
  Monad d = dual_monad(m);
  CHECK(d.A.twists == std::vector<int>{-1});
  CHECK(d.B.rank() == 4);
  CHECK(d.C.twists == std::vector<int>{1});
  CHECK(validate_monad(d, Level::fiberwise).all_ok());
  Monad dd = dual_monad(d);
  CHECK(dd.alpha == m.alpha);
  CHECK(dd.beta == m.beta);
}

TEST_CASE("symmetric and antisymmetric parts split the tensor square") {
  for (const Monad& m : {null_correlation(), rank4_charge1()}) {
    BoundedComplex t = tensor_total(m, m);
    BoundedComplex s = sym_part(m);
    BoundedComplex a = antisym_part(m);
    for (int p = -2; p <= 2; ++p)
      CHECK(total_rank(s, p) + total_rank(a, p) == total_rank(t, p));
    CHECK(s.d_squared_zero());
    CHECK(a.d_squared_zero());
  }
}

TEST_CASE("symmetric part term ranks for the rank-4 charge-1 monad") {
  BoundedComplex s = sym_part(rank4_charge1());
  CHECK(total_rank(s, -2) == 0);  // exterior square of a single O(-1)
  CHECK(total_rank(s, -1) == 6);  // A (x) B
  CHECK(total_rank(s, 0) == 22);  // S^2(6 O) + A (x) C
  CHECK(total_rank(s, 1) == 6);
  CHECK(total_rank(s, 2) == 0);
}
