#ifndef P3M_POLY_HPP
#define P3M_POLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "p3m/matrix.hpp"
#include "p3m/modp.hpp"

namespace p3m::ring {

using la::Rat;

inline constexpr std::array<char, 4> kVarNames = {'x', 'y', 'z', 'w'};

struct Monomial {
  std::array<int, 4> e{0, 0, 0, 0};

  int degree() const { return e[0] + e[1] + e[2] + e[3]; }
  Monomial operator*(const Monomial& o) const {
    return {{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2], e[3] + o.e[3]}};
  }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < 4; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Monomial quotient(const Monomial& o) const {  // this / o
    return {{e[0] - o.e[0], e[1] - o.e[1], e[2] - o.e[2], e[3] - o.e[3]}};
  }
  static Monomial lcm(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial& o) const { return e == o.e; }
};

/// Graded lexicographic, x > y > z > w. The global basis order.
bool grlex_less(const Monomial& a, const Monomial& b);
/// Graded reverse lexicographic, x > y > z > w. Groebner computations only.
bool grevlex_less(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_less(b, a);
  }
};

/// C(d+3, 3) for d >= 0, else 0.
long long graded_dim(long long d);

/// Degree-d monomials, largest first in the global order; cached.
const std::vector<Monomial>& monomial_basis(int d);
/// Position of m in monomial_basis(m.degree()).
std::size_t monomial_index(const Monomial& m);

struct SyntaxError : std::runtime_error {
  explicit SyntaxError(const std::string& w) : std::runtime_error(w) {}
};
struct NotHomogeneous : std::runtime_error {
  explicit NotHomogeneous(const std::string& w) : std::runtime_error(w) {}
};
struct DegreeMismatch : std::runtime_error {
  explicit DegreeMismatch(const std::string& w) : std::runtime_error(w) {}
};

/// Homogeneous polynomial with exact rational coefficients. The zero
/// polynomial keeps an explicit degree tag so degree bookkeeping stays total.
class HomogPoly {
 public:
  HomogPoly() = default;
  explicit HomogPoly(int degree) : deg_(degree) {}

  static HomogPoly zero(int degree) { return HomogPoly(degree); }
  static HomogPoly constant(const Rat& c);
  static HomogPoly variable(int i);
  static HomogPoly term(const Monomial& m, const Rat& c);

  int degree() const { return deg_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rat, GrlexGreater>& terms() const { return terms_; }

  void add_term(const Monomial& m, const Rat& c);

  HomogPoly operator+(const HomogPoly& o) const;
  HomogPoly operator-(const HomogPoly& o) const;
  HomogPoly operator-() const;
  HomogPoly operator*(const HomogPoly& o) const;
  HomogPoly scale(const Rat& c) const;
  bool operator==(const HomogPoly& o) const;

  /// Leading monomial under the given order-less predicate.
  const Monomial& leading_monomial(bool (*less)(const Monomial&, const Monomial&)) const;
  const Rat& coeff(const Monomial& m) const;

  uint64_t eval_mod(const modp::Field& f, const std::array<uint64_t, 4>& pt) const;
  Rat eval(const std::array<Rat, 4>& pt) const;

 private:
  int deg_ = 0;
  std::map<Monomial, Rat, GrlexGreater> terms_;
};

HomogPoly parse_poly(const std::string& text,
                     std::optional<int> expected_degree = std::nullopt);
std::string to_string(const HomogPoly& p);
std::string to_string(const Monomial& m);

/// Matrix of multiplication by f from degree-d monomials to degree-(d+e)
/// monomials, bases in the global order. Negative degrees give empty blocks.
la::RationalMatrix mult_matrix(const HomogPoly& f, int d);

}  // namespace p3m::ring

#endif
