#include <doctest.h>

#include <random>

#include "p3m/modp.hpp"

using namespace p3m::modp;

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(2147483647ull));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));  // Carmichael
  CHECK_FALSE(is_prime(1ull << 40));
}

TEST_CASE("random primes are distinct, in range, deterministic") {
  auto a = random_primes(3, 42);
  auto b = random_primes(3, 42);
  CHECK(a == b);
  for (uint64_t p : a) {
    CHECK(p > (1ull << 60));
    CHECK(p < (1ull << 61));
    CHECK(is_prime(p));
  }
  CHECK(a[0] != a[1]);
  CHECK(a[1] != a[2]);
}

TEST_CASE("field inverse") {
  Field f{1000003};
  for (uint64_t a : {1ull, 2ull, 999999ull, 123456ull})
    CHECK(f.mul(a, f.inv(a)) == 1);
}

TEST_CASE("dense rank on fixed matrices") {
  Field f{101};
  DenseMat id(f, 3, 3);
  for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
  CHECK(rank_dense_serial(id) == 3);
  CHECK(rank_dense_parallel(id) == 3);

  DenseMat z(f, 4, 5);
  CHECK(rank_dense_serial(z) == 0);

  // two proportional rows
  DenseMat m(f, 2, 3);
  m.at(0, 0) = 1; m.at(0, 1) = 2; m.at(0, 2) = 3;
  m.at(1, 0) = 2; m.at(1, 1) = 4; m.at(1, 2) = 6;
  CHECK(rank_dense_serial(m) == 1);
  CHECK(rank_dense_parallel(m) == 1);
}

TEST_CASE("sparse rank agrees with dense, serial and parallel") {
  std::mt19937_64 rng(7);
  auto primes = random_primes(1, 99);
  Field f{primes[0]};
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t rows = 1 + rng() % 40, cols = 1 + rng() % 50;
    DenseMat d(f, rows, cols);
    SparseMat s(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (rng() % 4 == 0) {
          uint64_t v = rng() % f.p;
          d.at(i, j) = v;
          s.add_entry(i, j, v);
        }
    std::size_t r0 = rank_dense_serial(d);
    CHECK(rank_dense_parallel(d) == r0);
    CHECK(rank_sparse(s, false) == r0);
    CHECK(rank_sparse(s, true) == r0);
  }
}

TEST_CASE("sparse duplicate entries combine") {
  Field f{101};
  SparseMat s(f, 1, 2);
  s.add_entry(0, 0, 50);
  s.add_entry(0, 0, 51);  // sums to 0 mod 101
  s.add_entry(0, 1, 7);
  s.finalize();
  CHECK(s.nnz() == 1);
  CHECK(rank_sparse(s, false) == 1);
}
