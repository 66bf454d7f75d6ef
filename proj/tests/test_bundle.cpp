#include <doctest.h>

#include "p3m/bundle.hpp"

using namespace p3m::bundle;
using p3m::ring::parse_poly;
using p3m::ring::HomogPoly;

TEST_CASE("bott numbers") {
  CHECK(bott_h(0, 0) == 1);
  CHECK(bott_h(2, 0) == 10);
  CHECK(bott_h(-4, 3) == 1);
  CHECK(bott_h(-5, 3) == 4);
  for (int i = 0; i <= 3; ++i) CHECK(bott_h(-1, i) == 0);
  for (int d = -8; d <= 8; ++d) {
    CHECK(bott_h(d, 1) == 0);
    CHECK(bott_h(d, 2) == 0);
  }
  // Serre duality for line bundles
  for (int d = -8; d <= 8; ++d) CHECK(bott_h(d, 0) == bott_h(-d - 4, 3));
}

TEST_CASE("graded matrix degree checks") {
  LineBundleSum a{-1}, b{0, 0};
  GradedMatrix m(a, b);
  m.set(0, 0, parse_poly("x"));
  CHECK_THROWS_AS(m.set(1, 0, parse_poly("x*y")), p3m::ring::DegreeMismatch);
  m.set(1, 0, parse_poly("y - w"));
  CHECK_FALSE(m.is_zero());
}

TEST_CASE("dual is an involution") {
  LineBundleSum a{-2, -1}, b{0, 0, 0};
  GradedMatrix m(a, b);
  m.set(0, 0, parse_poly("x^2 - y*w"));
  m.set(1, 1, parse_poly("z"));
  m.set(2, 0, parse_poly("w^2"));
  GradedMatrix d = m.dual();
  CHECK(d.src == b.negated());
  CHECK(d.dst == a.negated());
  CHECK(d.dual() == m);
}

TEST_CASE("h0 matrix shapes") {
  LineBundleSum six_o = LineBundleSum::repeated(0, 6);
  GradedMatrix id(six_o, six_o);
  for (std::size_t i = 0; i < 6; ++i) id.set(i, i, HomogPoly::constant(1));
  CHECK(h0_matrix(id, 0) == p3m::la::RationalMatrix::identity(6));

  // beta of a modified-monad shape: 6*O -> O(1) + O(2)
  LineBundleSum c{1, 2};
  GradedMatrix beta(six_o, c);
  beta.set(0, 0, parse_poly("x"));
  beta.set(0, 1, parse_poly("y"));
  beta.set(0, 2, parse_poly("z"));
  beta.set(0, 3, parse_poly("w"));
  beta.set(1, 0, parse_poly("x^2"));
  beta.set(1, 5, parse_poly("y*w"));
  auto m0 = h0_matrix(beta, 0);
  CHECK(m0.rows() == 14);  // 4 + 10
  CHECK(m0.cols() == 6);

  // twist far below every source twist: no columns
  CHECK(h0_matrix(beta, -1).cols() == 0);
}

TEST_CASE("h3 matrix dimensions follow bott numbers") {
  // alpha of a modified-monad shape: O(-2) + O(-1) -> 6*O
  LineBundleSum a{-2, -1};
  LineBundleSum six_o = LineBundleSum::repeated(0, 6);
  GradedMatrix alpha(a, six_o);
  alpha.set(0, 0, parse_poly("x^2"));
  alpha.set(1, 1, parse_poly("y"));
  auto h3 = h3_matrix(alpha, -3);
  CHECK(h3.cols() == 5);  // h^3(O(-5)) + h^3(O(-4)) = 4 + 1
  CHECK(h3.rows() == 0);  // h^3(6*O(-3)) = 0

  for (int l = -6; l <= 2; ++l) {
    auto m = h3_matrix(alpha, l);
    CHECK(m.rows() == static_cast<std::size_t>(six_o.h(l, 3)));
    CHECK(m.cols() == static_cast<std::size_t>(a.h(l, 3)));
  }
}

TEST_CASE("h0 is functorial under composition") {
  LineBundleSum a{-1, 0}, b{0, 1}, c{1, 1, 2};
  GradedMatrix f(a, b);
  f.set(0, 0, parse_poly("x"));
  f.set(0, 1, HomogPoly::constant(2));
  f.set(1, 0, parse_poly("y*z - w^2"));
  f.set(1, 1, parse_poly("w"));
  GradedMatrix g(b, c);
  g.set(0, 0, parse_poly("z"));
  g.set(1, 1, HomogPoly::constant(-1));
  g.set(2, 0, parse_poly("x*w"));
  g.set(2, 1, parse_poly("y"));
  GradedMatrix gf = g.compose(f);
  CHECK(gf.src == a);
  CHECK(gf.dst == c);
  for (int l = -1; l <= 2; ++l)
    CHECK(h0_matrix(gf, l) == h0_matrix(g, l).mul(h0_matrix(f, l)));
  for (int l = -5; l <= -3; ++l)
    CHECK(h3_matrix(gf, l) == h3_matrix(g, l).mul(h3_matrix(f, l)));
}
