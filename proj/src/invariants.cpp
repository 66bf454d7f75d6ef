#include "p3m/invariants.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <vector>

#include "p3m/cohomology.hpp"
#include "p3m/families.hpp"

namespace p3m::inv {

namespace {

using Series = std::array<long long, 4>;  // coefficients of 1, t, t^2, t^3

Series mul(const Series& a, const Series& b) {
  Series out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; i + j < 4; ++j) out[i + j] += a[i] * b[j];
  return out;
}

Series linear(long long c) { return {1, c, 0, 0}; }

Series inverse(const Series& a) {
  // (1 + q1 t + q2 t^2 + q3 t^3)^-1 mod t^4; leading coefficient must be 1
  const long long q1 = a[1], q2 = a[2], q3 = a[3];
  return {1, -q1, q1 * q1 - q2, -q1 * q1 * q1 + 2 * q1 * q2 - q3};
}

long long binom3(long long n) { return n * (n - 1) * (n - 2) / 6; }

}  // namespace

ChernData chern(const cx::Monad& m) {
  Series num{1, 0, 0, 0}, den{1, 0, 0, 0};
  for (int b : m.B.twists) num = mul(num, linear(b));
  for (int a : m.A.twists) den = mul(den, linear(a));
  for (int c : m.C.twists) den = mul(den, linear(c));
  Series total = mul(num, inverse(den));
  ChernData cd;
  cd.rank = static_cast<int>(m.B.rank()) - static_cast<int>(m.A.rank()) -
            static_cast<int>(m.C.rank());
  cd.c1 = total[1];
  cd.c2 = total[2];
  cd.c3 = total[3];
  return cd;
}

long long euler_char(const ChernData& cd, int l) {
  if (cd.c1 != 0)
    throw NotImplemented("euler_char is only implemented for c1 = 0");
  long long t = l;
  return cd.rank * (t + 1) * (t + 2) * (t + 3) / 6 - cd.c2 * (t + 2) + cd.c3 / 2;
}

Spectrum spectrum_from_h1(const std::map<int, long long>& h1_values, int n) {
  if (h1_values.empty() || h1_values.rbegin()->first != -2)
    throw Inconsistent("h^1 values must start at twist -2");
  const int lmin = h1_values.begin()->first;
  for (int l = -2; l >= lmin; --l)
    if (!h1_values.count(l))
      throw Inconsistent("missing h^1 value at twist " + std::to_string(l));
  // in the model h^1 is non-increasing towards -infinity, so a zero bottom
  // value certifies that everything below vanishes
  if (h1_values.at(lmin) != 0)
    throw Inconsistent("h^1 values do not reach zero");
  auto h1 = [&](int l) -> long long {
    return l < lmin ? 0 : h1_values.at(l);
  };

  // N_m = h1(-m-1) - h1(-m-2) counts the k_i >= m, for m >= 1
  std::vector<long long> count_ge;  // index m - 1
  for (int mdeg = 1; -mdeg - 1 >= lmin; ++mdeg)
    count_ge.push_back(h1(-mdeg - 1) - h1(-mdeg - 2));
  while (!count_ge.empty() && count_ge.back() == 0) count_ge.pop_back();

  Spectrum s;
  for (std::size_t m = 0; m < count_ge.size(); ++m) {
    long long next = m + 1 < count_ge.size() ? count_ge[m + 1] : 0;
    long long mult = count_ge[m] - next;
    if (mult < 0) throw Inconsistent("negative multiplicity in the spectrum");
    for (long long r = 0; r < mult; ++r) {
      s.values.insert(static_cast<int>(m) + 1);
      s.values.insert(-static_cast<int>(m) - 1);
    }
  }
  if (static_cast<int>(s.values.size()) > n)
    throw Inconsistent("spectrum larger than c2");
  while (static_cast<int>(s.values.size()) < n) s.values.insert(0);

  // reconstruction must reproduce every input value
  for (const auto& [l, v] : h1_values) {
    long long model = 0;
    for (int k : s.values) model += std::max(0LL, static_cast<long long>(k) + l + 2);
    if (model != v)
      throw Inconsistent("reconstruction mismatch at twist " + std::to_string(l));
  }
  return s;
}

namespace {

ChernData require_rank2_c1zero(const cx::Monad& m) {
  ChernData cd = chern(m);
  if (cd.rank != 2 || cd.c1 != 0)
    throw ShapeError("expected a rank-2 monad with c1 = 0");
  return cd;
}

/// h^1(E(l)) for l = -2 downward until two consecutive zeros.
std::map<int, long long> h1_tail(const cx::Monad& m) {
  std::map<int, long long> h1;
  int zeros_in_a_row = 0;
  for (int l = -2; l >= -12; --l) {
    h1[l] = coh::ladder_cohomology(m, l).h[1];
    zeros_in_a_row = h1[l] == 0 ? zeros_in_a_row + 1 : 0;
    if (zeros_in_a_row >= 2) break;
  }
  return h1;
}

}  // namespace

int alpha_invariant(const cx::Monad& m) {
  require_rank2_c1zero(m);
  return static_cast<int>(coh::ladder_cohomology(m, -2).h[1] % 2);
}

StabilityProbe stability_probe(const cx::Monad& m) {
  require_rank2_c1zero(m);
  StabilityProbe p;
  p.h0_E = coh::ladder_cohomology(m, 0).h[0];
  p.h0_E_minus1 = coh::ladder_cohomology(m, -1).h[0];
  if (p.h0_E == 0)
    p.verdict = StabilityVerdict::stable;
  else if (p.h0_E_minus1 == 0)
    p.verdict = StabilityVerdict::semistable;
  else
    p.verdict = StabilityVerdict::undetermined;
  return p;
}

namespace {

struct ShapeRow {
  int id;
  std::vector<int> a, b, c;  // sorted twist lists
  Component component;
  int dimension;
  int alpha;
  std::vector<int> spectrum;
};

const std::vector<ShapeRow>& shape_table() {
  static const std::vector<ShapeRow> rows = {
      {1, std::vector<int>(5, -1), std::vector<int>(12, 0), std::vector<int>(5, 1),
       Component::Instanton, 37, 0, {0, 0, 0, 0, 0}},
      {2, {-2, -2}, {-1, -1, -1, 1, 1, 1}, {2, 2},
       Component::Instanton, 37, 0, {-1, -1, 0, 1, 1}},
      {3, {-3}, {-2, 0, 0, 2}, {3},
       Component::Ein, 40, 1, {-2, -1, 0, 1, 2}},
      {4, {-2, -1}, {0, 0, 0, 0, 0, 0}, {1, 2},
       Component::ModifiedInstanton, 37, 1, {-1, 0, 0, 0, 1}},
      {5, {-2, -1, -1}, {-1, 0, 0, 0, 0, 0, 0, 1}, {1, 1, 2},
       Component::ModifiedInstanton, 37, 1, {-1, 0, 0, 0, 1}},
  };
  return rows;
}

std::string component_name(Component c) {
  switch (c) {
    case Component::Instanton:
      return "Instanton";
    case Component::Ein:
      return "Ein";
    case Component::ModifiedInstanton:
    default:
      return "Modified Instanton";
  }
}

}  // namespace

std::string ComponentReport::describe() const {
  std::ostringstream os;
  os << component_name(component) << " component, dimension " << dimension
     << ", alpha invariant " << alpha << ", spectrum (";
  bool first = true;
  for (int k : spectrum.values) {
    if (!first) os << ",";
    os << k;
    first = false;
  }
  os << ")";
  return os.str();
}

ComponentReport classify_b5(const cx::Monad& m) {
  ChernData cd = require_rank2_c1zero(m);
  if (cd.c2 != 5) throw NotCharge5("c2 = " + std::to_string(cd.c2));

  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const std::vector<int> a = sorted(m.A.twists), b = sorted(m.B.twists),
                         c = sorted(m.C.twists);
  const ShapeRow* row = nullptr;
  for (const auto& r : shape_table())
    if (r.a == a && r.b == b && r.c == c) row = &r;
  if (!row) throw UnknownShape("twist lists match none of the five displays");

  ComponentReport rep;
  rep.component = row->component;
  rep.dimension = row->dimension;
  rep.shape_id = row->id;
  rep.alpha = alpha_invariant(m);
  rep.spectrum = spectrum_from_h1(h1_tail(m), 5);

  Spectrum expected;
  expected.values.insert(row->spectrum.begin(), row->spectrum.end());
  if (rep.alpha != row->alpha || !(rep.spectrum == expected))
    throw ReportInconsistent(
        "computed alpha/spectrum disagree with the table row for this shape");
  return rep;
}

DimG dim_g_a1(int a) {
  if (a < 2) throw ShapeError("a must be at least 2");
  DimG d;
  const long long bin = binom3(a + 3);
  d.formula_value = 4 * bin - a - 1;
  auto nc = fam::make_null_correlation({1, 0, 0, 0, 0, 1});
  d.h0_N_a = coh::ladder_cohomology(nc.monad, a).h[0];
  d.breakdown = 5 + d.h0_N_a + 2 * (bin - 2);
  d.epsilon = a == 3 ? 1 : 0;
  d.h1_end_prediction = d.formula_value + d.epsilon;
  d.lower_bound = 8 * (static_cast<long long>(a) * a + 1) - 3;
  d.identity_ok = d.formula_value == d.breakdown;
  d.exceeds_bound = d.formula_value > d.lower_bound;
  return d;
}

}  // namespace p3m::inv
