#ifndef P3M_GROEBNER_HPP
#define P3M_GROEBNER_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "p3m/bundle.hpp"
#include "p3m/poly.hpp"

namespace p3m::gb {

using ring::HomogPoly;

struct IdealBasis {
  std::vector<HomogPoly> gens;
};

/// Buchberger's algorithm in graded reverse lexicographic order; the result is
/// auto-reduced.
std::vector<HomogPoly> buchberger(std::vector<HomogPoly> gens);

/// Every S-polynomial of the given set reduces to zero.
bool is_groebner_basis(const std::vector<HomogPoly>& basis);

/// Remainder of full multivariate division by the given set, grevlex order.
HomogPoly reduce_poly(const HomogPoly& p, const std::vector<HomogPoly>& basis);

/// True iff the vanishing locus in P^3 is empty (the ideal is irrelevant),
/// decided by the pure-power criterion on a grevlex Groebner basis.
bool projective_empty(const IdealBasis& ideal);

enum class Mode { linear_exact, sample, groebner };

struct ModeUnsupported : std::runtime_error {
  explicit ModeUnsupported(const std::string& w) : std::runtime_error(w) {}
};
struct MinorCapExceeded : std::runtime_error {
  explicit MinorCapExceeded(const std::string& w) : std::runtime_error(w) {}
};

struct SampleParams {
  int n = 100;
  uint64_t prime = 2147483647ull;  // 2^31 - 1
  uint64_t seed = 7771;
};

enum class VerdictKind { Everywhere, Witness, ProbablyEverywhere };

struct FiberVerdict {
  VerdictKind kind = VerdictKind::Everywhere;
  std::optional<std::array<la::Rat, 4>> point;         // exact projective witness
  std::optional<std::array<uint64_t, 4>> point_mod_p;  // sampling witness
  int samples = 0;
  std::string note;
};

/// Does m have rank min(rows, cols) at every point of P^3?
FiberVerdict fiberwise_full_rank(const bundle::GradedMatrix& m, Mode mode,
                                 const SampleParams& params = {});

/// Mode picked automatically: linear_exact for a single row/column of linear
/// forms, groebner when the minor count fits the cap, sampling otherwise.
FiberVerdict fiberwise_auto(const bundle::GradedMatrix& m,
                            const SampleParams& params = {});

/// Ideal of maximal minors; throws MinorCapExceeded past 20000 minors.
IdealBasis maximal_minors(const bundle::GradedMatrix& m);

}  // namespace p3m::gb

#endif
