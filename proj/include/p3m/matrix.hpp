#ifndef P3M_MATRIX_HPP
#define P3M_MATRIX_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace p3m::la {

using Rat = mpq_class;

/// Raised by induced_map when the ambient map does not descend to the
/// requested subquotients.
struct WellDefinednessError : std::runtime_error {
  explicit WellDefinednessError(const std::string& what) : std::runtime_error(what) {}
};

/// Sparse matrix with exact rational entries, triplet storage.
class RationalMatrix {
 public:
  struct Entry {
    uint32_t r, c;
    Rat v;
  };

  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void add_entry(std::size_t i, std::size_t j, Rat v);
  /// Sorted row-major entry list with duplicates combined and zeros dropped.
  const std::vector<Entry>& entries() const;
  Rat get(std::size_t i, std::size_t j) const;
  std::size_t nnz() const { return entries().size(); }

  RationalMatrix transpose() const;
  RationalMatrix mul(const RationalMatrix& o) const;
  /// [this | o] side by side.
  RationalMatrix hstack(const RationalMatrix& o) const;
  /// [this ; o] stacked.
  RationalMatrix vstack(const RationalMatrix& o) const;
  /// Columns sel of this, in the given order.
  RationalMatrix select_cols(const std::vector<std::size_t>& sel) const;

  std::vector<std::vector<Rat>> to_dense() const;
  static RationalMatrix from_dense(const std::vector<std::vector<Rat>>& d,
                                   std::size_t cols);

  bool operator==(const RationalMatrix& o) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  mutable std::vector<Entry> ent_;
  mutable bool normalized_ = true;
  void normalize() const;
};

struct RankConfig {
  enum class Strategy { exact, modular, hybrid };
  Strategy strategy = Strategy::hybrid;
  int num_primes = 3;
  uint64_t seed = 20240915;
  std::size_t threshold = 500;  // hybrid: above this, go modular
  bool parallel = false;        // OpenMP inside the prime-field kernels
};

std::size_t rank(const RationalMatrix& m, const RankConfig& cfg = {});

/// Basis of the right kernel as columns; exact.
RationalMatrix kernel_basis(const RationalMatrix& m);

/// Reduced row echelon form of a dense matrix, in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rat>>& a, std::size_t cols);

/// A vector space presented as S/D inside an ambient coordinate space.
struct Subquotient {
  std::size_t ambient_dim = 0;
  RationalMatrix sub_basis;    // columns span S
  RationalMatrix denom_basis;  // columns span D, must lie in S

  static Subquotient full(std::size_t n);

  std::size_t dim() const;
  /// Columns of sub_basis chosen as representatives of a basis of S/D.
  RationalMatrix representatives() const;
  /// Column indices into sub_basis of those representatives.
  std::vector<std::size_t> representative_indices() const;
  /// Coordinates of ambient vectors (columns of v, assumed in S) in the
  /// representative basis of S/D.
  RationalMatrix coordinates(const RationalMatrix& v) const;
  bool denominator_contained() const;
};

/// Matrix of the map S_src/D_src -> S_dst/D_dst induced by the ambient map f.
RationalMatrix induced_map(const RationalMatrix& f, const Subquotient& src,
                           const Subquotient& dst);

}  // namespace p3m::la

#endif
