#ifndef P3M_INVARIANTS_HPP
#define P3M_INVARIANTS_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "p3m/complex.hpp"

namespace p3m::inv {

struct NotImplemented : std::runtime_error {
  explicit NotImplemented(const std::string& w) : std::runtime_error(w) {}
};
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& w) : std::runtime_error(w) {}
};
struct Inconsistent : std::runtime_error {
  explicit Inconsistent(const std::string& w) : std::runtime_error(w) {}
};
struct NotCharge5 : std::runtime_error {
  explicit NotCharge5(const std::string& w) : std::runtime_error(w) {}
};
struct UnknownShape : std::runtime_error {
  explicit UnknownShape(const std::string& w) : std::runtime_error(w) {}
};
struct ReportInconsistent : std::runtime_error {
  explicit ReportInconsistent(const std::string& w) : std::runtime_error(w) {}
};

struct ChernData {
  int rank = 0;
  long long c1 = 0, c2 = 0, c3 = 0;
};

/// Truncation of prod (1 + b_i t) / (prod (1 + a_j t) prod (1 + c_k t)) at t^3.
ChernData chern(const cx::Monad& m);

/// chi(E(l)) = rank (l+1)(l+2)(l+3)/6 - c2 (l+2) + c3/2; c1 = 0 only.
long long euler_char(const ChernData& cd, int l);

struct Spectrum {
  std::multiset<int> values;
  bool operator==(const Spectrum& o) const { return values == o.values; }
};

/// Recover the spectrum from h^1(E(l)) for l <= -2 via the model
/// h^1(E(l)) = sum_i max(0, k_i + l + 2); the input must reach two
/// consecutive zeros and is re-checked against the reconstruction.
Spectrum spectrum_from_h1(const std::map<int, long long>& h1_values, int n);

/// Atiyah-Rees invariant h^1(E(-2)) mod 2 for rank-2, c1 = 0 monads.
int alpha_invariant(const cx::Monad& m);

enum class StabilityVerdict { stable, semistable, undetermined };

struct StabilityProbe {
  long long h0_E = 0;
  long long h0_E_minus1 = 0;
  StabilityVerdict verdict = StabilityVerdict::undetermined;
};

/// Rank-2, c1 = 0 criterion: stable iff h^0(E) = 0, semistable iff only
/// h^0(E(-1)) = 0.
StabilityProbe stability_probe(const cx::Monad& m);

enum class Component { Instanton, Ein, ModifiedInstanton };

struct ComponentReport {
  Component component = Component::Instanton;
  int dimension = 0;
  int shape_id = 0;  // which of the five displays matched (1..5)
  int alpha = 0;
  Spectrum spectrum;
  std::string describe() const;
};

/// Match a rank-2, c1 = 0, c2 = 5 monad against the five component shapes,
/// then cross-check alpha invariant and spectrum against the table row.
ComponentReport classify_b5(const cx::Monad& m);

struct DimG {
  long long formula_value = 0;  // 4 binom(a+3,3) - a - 1
  long long breakdown = 0;      // 5 + h0(N(a)) + 2 (binom(a+3,3) - 2)
  long long h0_N_a = 0;
  int epsilon = 0;  // 1 exactly when a = 3
  long long h1_end_prediction = 0;
  long long lower_bound = 0;  // 8 (a^2 + 1) - 3
  bool identity_ok = false;
  bool exceeds_bound = false;
};

/// Dimension of the modified-instanton family G(a,1).
DimG dim_g_a1(int a);

}  // namespace p3m::inv

#endif
