#include "p3m/poly.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

namespace p3m::ring {

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < 4; ++i) m.e[i] = std::max(a.e[i], b.e[i]);
  return m;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i < 4; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

bool grevlex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 3; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

long long graded_dim(long long d) {
  if (d < 0) return 0;
  return (d + 1) * (d + 2) * (d + 3) / 6;
}

const std::vector<Monomial>& monomial_basis(int d) {
  static std::map<int, std::vector<Monomial>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  std::vector<Monomial> v;
  if (d >= 0) {
    v.reserve(graded_dim(d));
    for (int ex = d; ex >= 0; --ex)
      for (int ey = d - ex; ey >= 0; --ey)
        for (int ez = d - ex - ey; ez >= 0; --ez)
          v.push_back({{ex, ey, ez, d - ex - ey - ez}});
    std::sort(v.begin(), v.end(),
              [](const Monomial& a, const Monomial& b) { return grlex_less(b, a); });
  }
  return cache.emplace(d, std::move(v)).first->second;
}

std::size_t monomial_index(const Monomial& m) {
  const auto& basis = monomial_basis(m.degree());
  auto it = std::lower_bound(basis.begin(), basis.end(), m,
                             [](const Monomial& a, const Monomial& b) {
                               return grlex_less(b, a);
                             });
  return static_cast<std::size_t>(it - basis.begin());
}

HomogPoly HomogPoly::constant(const Rat& c) {
  HomogPoly p(0);
  p.add_term(Monomial{}, c);
  return p;
}

HomogPoly HomogPoly::variable(int i) {
  HomogPoly p(1);
  Monomial m;
  m.e[i] = 1;
  p.add_term(m, 1);
  return p;
}

HomogPoly HomogPoly::term(const Monomial& m, const Rat& c) {
  HomogPoly p(m.degree());
  p.add_term(m, c);
  return p;
}

void HomogPoly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  if (m.degree() != deg_)
    throw std::logic_error("HomogPoly::add_term degree mismatch");
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HomogPoly HomogPoly::operator+(const HomogPoly& o) const {
  if (!is_zero() && !o.is_zero() && deg_ != o.deg_)
    throw std::logic_error("HomogPoly: adding different degrees");
  HomogPoly r(is_zero() ? o.deg_ : deg_);
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

HomogPoly HomogPoly::operator-() const {
  HomogPoly r(deg_);
  for (const auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

HomogPoly HomogPoly::operator-(const HomogPoly& o) const { return *this + (-o); }

HomogPoly HomogPoly::operator*(const HomogPoly& o) const {
  HomogPoly r(deg_ + o.deg_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

HomogPoly HomogPoly::scale(const Rat& c) const {
  HomogPoly r(deg_);
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

bool HomogPoly::operator==(const HomogPoly& o) const {
  if (is_zero() && o.is_zero()) return true;
  return deg_ == o.deg_ && terms_ == o.terms_;
}

const Monomial& HomogPoly::leading_monomial(
    bool (*less)(const Monomial&, const Monomial&)) const {
  if (terms_.empty()) throw std::logic_error("leading monomial of zero");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (less(best->first, it->first)) best = it;
  return best->first;
}

const Rat& HomogPoly::coeff(const Monomial& m) const {
  static const Rat zero(0);
  auto it = terms_.find(m);
  return it == terms_.end() ? zero : it->second;
}

uint64_t HomogPoly::eval_mod(const modp::Field& f,
                             const std::array<uint64_t, 4>& pt) const {
  uint64_t acc = 0;
  for (const auto& [m, c] : terms_) {
    uint64_t den = mpz_fdiv_ui(c.get_den().get_mpz_t(), f.p);
    if (den == 0) throw std::runtime_error("eval_mod: denominator divisible by p");
    uint64_t v = f.mul(mpz_fdiv_ui(c.get_num().get_mpz_t(), f.p), f.inv(den));
    for (int i = 0; i < 4; ++i)
      v = f.mul(v, f.pow(pt[i], static_cast<uint64_t>(m.e[i])));
    acc = f.add(acc, v);
  }
  return acc;
}

Rat HomogPoly::eval(const std::array<Rat, 4>& pt) const {
  Rat acc(0);
  for (const auto& [m, c] : terms_) {
    Rat v = c;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < m.e[i]; ++k) v *= pt[i];
    acc += v;
  }
  return acc;
}

namespace {

struct MultiPoly {
  std::map<Monomial, Rat, GrlexGreater> t;
  int deg_hint = 0;

  void add(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    deg_hint = std::max(deg_hint, m.degree());
    auto [it, fresh] = t.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  }
  void add(const MultiPoly& o) {
    for (const auto& [m, c] : o.t) add(m, c);
    deg_hint = std::max(deg_hint, o.deg_hint);
  }
  MultiPoly mul(const MultiPoly& o) const {
    MultiPoly r;
    for (const auto& [m1, c1] : t)
      for (const auto& [m2, c2] : o.t) r.add(m1 * m2, c1 * c2);
    r.deg_hint = std::max(r.deg_hint, deg_hint + o.deg_hint);
    return r;
  }
  void negate() {
    for (auto& [m, c] : t) c = -c;
  }
};

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw SyntaxError(std::string("expected '") + c + "' at position " +
                        std::to_string(pos));
  }

  unsigned long parse_uint() {
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw SyntaxError("expected integer at position " + std::to_string(pos));
    unsigned long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<unsigned long>(s[pos] - '0');
      ++pos;
    }
    return v;
  }

  int var_index() {
    char c = peek();
    for (int i = 0; i < 4; ++i)
      if (c == kVarNames[i]) return i;
    return -1;
  }

  MultiPoly parse_factor() {
    if (accept('(')) {
      MultiPoly p = parse_expr();
      expect(')');
      return p;
    }
    int v = var_index();
    if (v < 0)
      throw SyntaxError("expected variable or '(' at position " + std::to_string(pos));
    ++pos;
    unsigned long e = 1;
    if (accept('^')) e = parse_uint();
    Monomial m;
    m.e[v] = static_cast<int>(e);
    MultiPoly p;
    p.add(m, 1);
    return p;
  }

  MultiPoly parse_term() {
    MultiPoly p;
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      unsigned long num = parse_uint();
      Rat coeff(static_cast<long>(num));
      if (accept('/')) {
        unsigned long den = parse_uint();
        if (den == 0) throw SyntaxError("zero denominator");
        coeff /= static_cast<long>(den);
      }
      p.add(Monomial{}, coeff);
    } else {
      p = parse_factor();
    }
    while (accept('*')) p = p.mul(parse_factor());
    return p;
  }

  MultiPoly parse_expr() {
    MultiPoly acc;
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    MultiPoly t = parse_term();
    if (neg) t.negate();
    acc.add(t);
    for (;;) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos;
        MultiPoly u = parse_term();
        if (c == '-') u.negate();
        acc.add(u);
      } else {
        break;
      }
    }
    return acc;
  }
};

}  // namespace

HomogPoly parse_poly(const std::string& text, std::optional<int> expected_degree) {
  Parser parser(text);
  MultiPoly p = parser.parse_expr();
  parser.skip_ws();
  if (parser.pos != text.size())
    throw SyntaxError("unexpected trailing input at position " +
                      std::to_string(parser.pos));
  int deg = -1;
  for (const auto& [m, c] : p.t) {
    if (deg < 0)
      deg = m.degree();
    else if (m.degree() != deg)
      throw NotHomogeneous("mixed degrees " + std::to_string(deg) + " and " +
                           std::to_string(m.degree()));
  }
  if (deg < 0) deg = expected_degree.value_or(p.deg_hint);
  if (expected_degree && deg != *expected_degree)
    throw DegreeMismatch("expected degree " + std::to_string(*expected_degree) +
                         ", got " + std::to_string(deg));
  HomogPoly out(deg);
  for (const auto& [m, c] : p.t) out.add_term(m, c);
  return out;
}

std::string to_string(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    if (m.e[i] == 0) continue;
    if (!first) os << '*';
    os << kVarNames[i];
    if (m.e[i] > 1) os << '^' << m.e[i];
    first = false;
  }
  if (first) os << '1';
  return os.str();
}

std::string to_string(const HomogPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << '-';
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    const bool constant = m.degree() == 0;
    if (a != 1 || constant) {
      os << a.get_str();
      if (!constant) os << '*';
    }
    if (!constant) os << to_string(m);
    first = false;
  }
  return os.str();
}

la::RationalMatrix mult_matrix(const HomogPoly& f, int d) {
  const int e = f.degree();
  const std::size_t rows = static_cast<std::size_t>(graded_dim(d + e));
  const std::size_t cols = d >= 0 ? static_cast<std::size_t>(graded_dim(d)) : 0;
  la::RationalMatrix m(rows, cols);
  if (cols == 0 || rows == 0 || f.is_zero()) return m;
  const auto& src = monomial_basis(d);
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [mono, c] : f.terms())
      m.add_entry(monomial_index(mono * src[j]), j, c);
  return m;
}

}  // namespace p3m::ring
