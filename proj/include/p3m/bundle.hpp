#ifndef P3M_BUNDLE_HPP
#define P3M_BUNDLE_HPP

#include <vector>

#include "p3m/matrix.hpp"
#include "p3m/poly.hpp"

namespace p3m::bundle {

/// h^i(O(d)) on projective 3-space.
long long bott_h(int d, int i);

/// Direct sum of line bundles O(t_1) + ... + O(t_r); order fixes indexing.
struct LineBundleSum {
  std::vector<int> twists;

  LineBundleSum() = default;
  LineBundleSum(std::initializer_list<int> t) : twists(t) {}
  explicit LineBundleSum(std::vector<int> t) : twists(std::move(t)) {}
  static LineBundleSum repeated(int twist, std::size_t count);

  std::size_t rank() const { return twists.size(); }
  /// h^i of the twisted sum at twist l.
  long long h(int l, int i) const;
  LineBundleSum negated() const;
  LineBundleSum concat(const LineBundleSum& o) const;
  bool operator==(const LineBundleSum& o) const { return twists == o.twists; }
};

/// Morphism between line-bundle sums: entry (i,j) is homogeneous of degree
/// dst_i - src_j, zero whenever that is negative.
struct GradedMatrix {
  LineBundleSum src, dst;
  std::vector<std::vector<ring::HomogPoly>> ent;  // dst.rank() x src.rank()

  GradedMatrix() = default;
  GradedMatrix(LineBundleSum s, LineBundleSum d);

  const ring::HomogPoly& at(std::size_t i, std::size_t j) const { return ent[i][j]; }
  /// Degree-checked entry assignment.
  void set(std::size_t i, std::size_t j, ring::HomogPoly p);

  bool is_zero() const;
  GradedMatrix dual() const;
  /// this o other (other first).
  GradedMatrix compose(const GradedMatrix& other) const;
  bool operator==(const GradedMatrix& o) const;
};

/// Matrix of H^0(src(l)) -> H^0(dst(l)) in the global monomial bases.
la::RationalMatrix h0_matrix(const GradedMatrix& m, int l);

/// Matrix of H^3(src(l)) -> H^3(dst(l)); bases of H^3(O(d)) are indexed by the
/// degree-(-d-4) monomial basis, and the matrix is the transpose of the dual
/// map on H^0 at twist -l-4.
la::RationalMatrix h3_matrix(const GradedMatrix& m, int l);

}  // namespace p3m::bundle

#endif
