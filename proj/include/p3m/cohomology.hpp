#ifndef P3M_COHOMOLOGY_HPP
#define P3M_COHOMOLOGY_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "p3m/complex.hpp"
#include "p3m/matrix.hpp"

namespace p3m::coh {

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& w) : std::runtime_error(w) {}
};
struct RangeTooSmall : std::runtime_error {
  explicit RangeTooSmall(const std::string& w) : std::runtime_error(w) {}
};

/// One cohomology space presented as a subquotient of an H^0 or H^3 space of
/// a monad term.
struct CohomologyPresentation {
  int degree = 0;  // the i of H^i
  int twist = 0;
  std::string ambient;  // which coordinate space the model lives in
  la::Subquotient model;
};

struct LadderResult {
  std::array<long long, 4> h{0, 0, 0, 0};
  std::array<CohomologyPresentation, 4> pres;
};

/// Exact cohomology of the monad's cohomology sheaf at twist l via the spliced
/// long exact sequences; uses only H^0 and H^3 of line bundles.
/// Requires alpha injective as a sheaf map (checked on H^0 level) and beta
/// fiberwise surjective (assumed).
LadderResult ladder_cohomology(const cx::Monad& m, int l);

/// h^i(E(l)) for l in [lo, hi]; rows i = 0..3.
std::map<int, std::array<long long, 4>> ladder_table(const cx::Monad& m, int lo,
                                                     int hi);

/// Degrees (with multiplicity) of a minimal generating set of the graded
/// module H^1_*(E) over the coordinate ring, found by comparing H^1(E(l))
/// with the image of the four multiplication maps from H^1(E(l-1)).
std::multiset<int> h1_module_generators(const cx::Monad& m, int l_min, int l_max);

struct TruncationUnstable : std::runtime_error {
  explicit TruncationUnstable(const std::string& w) : std::runtime_error(w) {}
};

struct CechResult {
  std::map<int, long long> h;  // n -> dim of the n-th hypercohomology
  int bound_used = 0;
  int escalations = 0;
};

/// Rank configuration used by the Cech engine unless overridden: multi-modular
/// with parallel prime-field elimination.
la::RankConfig cech_default_rank();

/// Hypercohomology of T(l) from the truncated Cech double complex over the
/// four standard charts. Laurent exponents on inverted coordinates are
/// truncated at -B; B defaults to max(1, -d_min - 3) over the twisted
/// degrees d of the terms. Every run self-checks each line-bundle term against
/// the closed-form h^i and doubles B (at most twice) on a mismatch.
CechResult cech_hypercohomology(const cx::BoundedComplex& T, int l,
                                std::optional<int> bound = std::nullopt,
                                const la::RankConfig& cfg = cech_default_rank());

}  // namespace p3m::coh

#endif
