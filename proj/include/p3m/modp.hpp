#ifndef P3M_MODP_HPP
#define P3M_MODP_HPP

#include <cstdint>
#include <vector>
#include <utility>

namespace p3m::modp {

/// Arithmetic in Z/p for word-sized primes (p < 2^61).
struct Field {
  uint64_t p;

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p - a; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  uint64_t pow(uint64_t a, uint64_t e) const;
  uint64_t inv(uint64_t a) const { return pow(a % p, p - 2); }
};

bool is_prime(uint64_t n);

/// Distinct random primes in (2^60, 2^61), deterministic for a given seed.
std::vector<uint64_t> random_primes(int count, uint64_t seed);

/// Dense row-major matrix over Z/p.
struct DenseMat {
  Field f;
  std::size_t rows = 0, cols = 0;
  std::vector<uint64_t> a;  // rows*cols

  DenseMat() = default;
  DenseMat(Field f_, std::size_t r, std::size_t c) : f(f_), rows(r), cols(c), a(r * c, 0) {}
  uint64_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  uint64_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Gaussian elimination rank, single-threaded reference.
std::size_t rank_dense_serial(DenseMat m);

/// Same elimination with OpenMP-parallel row updates; result must match the
/// serial version exactly.
std::size_t rank_dense_parallel(DenseMat m);

/// Sparse matrix over Z/p in row-list form, built from triplets.
struct SparseMat {
  Field f;
  std::size_t rows = 0, cols = 0;
  // each row: sorted (col, value) pairs, value != 0
  std::vector<std::vector<std::pair<uint32_t, uint64_t>>> row;

  SparseMat() = default;
  SparseMat(Field f_, std::size_t r, std::size_t c) : f(f_), rows(r), cols(c), row(r) {}
  void add_entry(std::size_t i, std::size_t j, uint64_t v);
  void finalize();  // sort rows, combine duplicates, drop zeros
  std::size_t nnz() const;
};

/// Sparse elimination rank with Markowitz-style pivoting. `parallel` switches
/// on OpenMP for the row-update loop; the rank is identical either way.
std::size_t rank_sparse(SparseMat m, bool parallel);

}  // namespace p3m::modp

#endif
