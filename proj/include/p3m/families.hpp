#ifndef P3M_FAMILIES_HPP
#define P3M_FAMILIES_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "p3m/complex.hpp"

namespace p3m::fam {

using cx::Monad;
using la::Rat;
using ring::HomogPoly;

struct ZeroForm : std::runtime_error {
  explicit ZeroForm(const std::string& w) : std::runtime_error(w) {}
};
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& w) : std::runtime_error(w) {}
};
struct SectionNotInKernel : std::runtime_error {
  explicit SectionNotInKernel(const std::string& w) : std::runtime_error(w) {}
};
struct CertInvalid : std::runtime_error {
  explicit CertInvalid(const std::string& w) : std::runtime_error(w) {}
};
struct ValidationFailed : std::runtime_error {
  explicit ValidationFailed(const std::string& w) : std::runtime_error(w) {}
};

/// Monad of a 2-form on P^3: O(-1) -> 4 O -> O(1) with beta = (x y z w) and
/// alpha the skew matrix of the form applied to the coordinate column.
struct NullCorrelation {
  Monad monad;
  Rat pfaffian;
  bool locally_free = false;            // pfaffian != 0
  std::array<std::array<Rat, 4>, 2> line_span{};  // singular line when rank 2
};

/// w holds the coefficients (w12, w13, w14, w23, w24, w34).
NullCorrelation make_null_correlation(const std::array<Rat, 6>& w);

/// Coefficients of sigma = v1 x + v2 y + v3 z + v4 w, each a 2-vector.
struct ExtensionData {
  std::array<Rat, 2> v1{}, v2{}, v3{}, v4{};
};

/// O(-1) -> 6 O -> O(1) with beta = (x,y,z,w,0,0) and
/// alpha = (y,-x,0,0,sigma1,sigma2)^T; deliberately unvalidated so the
/// singular cases are constructible.
Monad make_rank4_charge1(const ExtensionData& d);

enum class ExtKind { LocallyFree, ReflexivePoint, TorsionFreeLine };

struct ExtVerdict {
  ExtKind kind = ExtKind::LocallyFree;
  std::array<Rat, 4> point{};  // the singular point for ReflexivePoint
  std::string describe() const;
};

ExtVerdict classify_extension(const ExtensionData& d);

/// Constant skew q with q alpha = g beta^T and h beta = alpha^T q as
/// polynomial identities; h = -g always.
struct SymplecticCert {
  Rat g, h;
  la::RationalMatrix q;
};

/// Check both identities and skewness/invertibility exactly.
bool verify_symplectic(const Monad& m, const SymplecticCert& cert);

/// Requires A = C^v entrywise (ShapeError otherwise). Solves the linear
/// system for (q, g) and searches seeded rational combinations of the
/// solution space for an invertible q with g != 0.
std::optional<SymplecticCert> solve_symplectic(const Monad& m, uint64_t seed = 101);

/// From a rank-4 instanton monad k O(-1) -> (4+2k) O -> k O(1), a symplectic
/// cert and a section s of degree a with beta s = 0:
/// O(-a) + k O(-1) -> (4+2k) O -> k O(1) + O(a), alpha = [s | alpha~],
/// beta = [beta~ ; s^T q].
Monad build_modified_monad(const Monad& inst, const SymplecticCert& cert,
                           const std::vector<HomogPoly>& s, int a,
                           cx::ValidationReport* report = nullptr);

/// Inverse of build_modified_monad on the instanton part.
Monad extract_rank4(const Monad& m);

/// Rank-2 charge-k instanton monad k O(-1) -> (2k+2) O -> k O(1), built-in
/// bidiagonal default, k in [1, 5].
Monad make_instanton(int k);
/// Custom maps, validated; throws ValidationFailed.
Monad make_instanton(int k, const bundle::GradedMatrix& alpha,
                     const bundle::GradedMatrix& beta);

/// Direct sum with extra trivial O summands in the middle term (turns the
/// rank-2 charge-k monad into the rank-(2+extra) one).
Monad widen_with_trivial(const Monad& m, std::size_t extra = 2);

/// O(-3) -> O(-2) + 2 O + O(2) -> O(3), default beta = (x^5, y^3, z^3, w).
Monad make_ein();
Monad make_ein(const std::array<HomogPoly, 4>& beta_entries);

struct ModifiedSearch {
  Monad monad;
  Monad instanton;
  SymplecticCert cert;
  std::vector<HomogPoly> section;
  cx::ValidationReport report;
  int tries = 0;
};

/// Full pipeline: rank-4 instanton default, symplectic solve, seeded section
/// search until fiberwise validation passes.
ModifiedSearch make_modified_instanton(int a, int k, uint64_t seed = 2027);

}  // namespace p3m::fam

#endif
