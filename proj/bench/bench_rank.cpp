// Compare the serial reference elimination against the OpenMP-parallel one on
// random dense and sparse prime-field matrices; the ranks must agree exactly.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

#include "p3m/modp.hpp"

using namespace p3m::modp;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

DenseMat random_dense(const Field& f, std::size_t n, std::mt19937_64& rng) {
  DenseMat m(f, n, n);
  for (auto& v : m.a) v = rng() % f.p;
  return m;
}

SparseMat random_sparse(const Field& f, std::size_t n, double density,
                        std::mt19937_64& rng) {
  SparseMat m(f, n, n);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (coin(rng) < density) m.add_entry(i, j, 1 + rng() % (f.p - 1));
  m.finalize();
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t dense_n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 400;
  std::size_t sparse_n = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1500;
  const Field f{random_primes(1, 99)[0]};
  std::mt19937_64 rng(12345);

  std::printf("prime p = %llu\n", static_cast<unsigned long long>(f.p));
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]",
              "speedup");

  {
    DenseMat m = random_dense(f, dense_n, rng);
    auto t0 = Clock::now();
    std::size_t rs = rank_dense_serial(m);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    std::size_t rp = rank_dense_parallel(m);
    double tp = seconds_since(t0);
    if (rs != rp) {
      std::fprintf(stderr, "dense rank mismatch: %zu vs %zu\n", rs, rp);
      return 1;
    }
    std::printf("%-28s %10.3f %10.3f %7.2fx  (n=%zu, rank %zu)\n",
                "dense elimination", ts, tp, ts / tp, dense_n, rs);
  }

  for (double density : {0.002, 0.01}) {
    SparseMat m = random_sparse(f, sparse_n, density, rng);
    auto t0 = Clock::now();
    std::size_t rs = rank_sparse(m, false);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    std::size_t rp = rank_sparse(m, true);
    double tp = seconds_since(t0);
    if (rs != rp) {
      std::fprintf(stderr, "sparse rank mismatch: %zu vs %zu\n", rs, rp);
      return 1;
    }
    std::printf("%-28s %10.3f %10.3f %7.2fx  (n=%zu, nnz %zu, rank %zu)\n",
                ("sparse, density " + std::to_string(density)).c_str(), ts, tp,
                ts / tp, sparse_n, m.nnz(), rs);
  }
  std::puts("serial and parallel kernels agree");
  return 0;
}
