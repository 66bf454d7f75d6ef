#ifndef P3M_COMPLEX_HPP
#define P3M_COMPLEX_HPP

#include <map>
#include <string>
#include <vector>

#include "p3m/bundle.hpp"
#include "p3m/groebner.hpp"

namespace p3m::cx {

using bundle::GradedMatrix;
using bundle::LineBundleSum;

/// Three-term complex A -> B -> C with beta o alpha = 0; the object of study.
struct Monad {
  LineBundleSum A, B, C;
  GradedMatrix alpha;  // A -> B
  GradedMatrix beta;   // B -> C
};

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_ok() const;
  std::string summary() const;
};

enum class Level { algebraic, fiberwise };

/// Algebraic level: shapes, entry degrees, beta o alpha = 0. Fiberwise level
/// additionally certifies alpha fiberwise injective and beta fiberwise
/// surjective via the degeneracy checks. Failures are reported, not thrown;
/// malformed shapes throw.
ValidationReport validate_monad(const Monad& m, Level level,
                                const gb::SampleParams& params = {});

/// Bounded cochain complex of line-bundle sums; diffs[p] maps term p to p+1.
struct BoundedComplex {
  std::map<int, LineBundleSum> terms;
  std::map<int, GradedMatrix> diffs;

  int min_degree() const;
  int max_degree() const;
  const LineBundleSum& term(int p) const;  // empty sum when absent
  /// Verify d o d = 0 entrywise; returns the first offending degree or nullopt.
  bool d_squared_zero() const;
};

/// The monad as a complex in degrees -1, 0, 1.
BoundedComplex monad_complex(const Monad& m);

/// Total complex of the tensor double complex, degrees -2..2, with the Koszul
/// sign d(u (x) v) = du (x) v + (-1)^p u (x) dv.
BoundedComplex tensor_total(const Monad& m, const Monad& n);

/// The (graded-)symmetric summand of tensor_total(m, m); middle cohomology is
/// the symmetric square of the monad's cohomology sheaf.
BoundedComplex sym_part(const Monad& m);

/// The antisymmetric complement; term ranks add up with sym_part.
BoundedComplex antisym_part(const Monad& m);

/// C^v -> B^v -> A^v with transposed entries and negated twists.
Monad dual_monad(const Monad& m);

}  // namespace p3m::cx

#endif
