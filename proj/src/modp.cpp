#include "p3m/modp.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace p3m::modp {

uint64_t Field::pow(uint64_t a, uint64_t e) const {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  Field f{n};
  // deterministic Miller-Rabin bases for 64-bit inputs
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = f.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = f.mul(x, x);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<uint64_t> random_primes(int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> dist(1ull << 60, (1ull << 61) - 1);
  std::vector<uint64_t> out;
  while (static_cast<int>(out.size()) < count) {
    uint64_t c = dist(rng) | 1;
    if (!is_prime(c)) continue;
    if (std::find(out.begin(), out.end(), c) != out.end()) continue;
    out.push_back(c);
  }
  return out;
}

std::size_t rank_dense_serial(DenseMat m) {
  const Field f = m.f;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (std::size_t j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    const uint64_t pinv = f.inv(m.at(rank, col));
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      uint64_t v = m.at(i, col);
      if (v == 0) continue;
      const uint64_t factor = f.mul(v, pinv);
      for (std::size_t j = col; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_dense_parallel(DenseMat m) {
  const Field f = m.f;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (std::size_t j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    const uint64_t pinv = f.inv(m.at(rank, col));
    const uint64_t* prow = &m.a[rank * m.cols];
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      uint64_t v = m.at(i, col);
      if (v == 0) continue;
      const uint64_t factor = f.mul(v, pinv);
      uint64_t* irow = &m.a[i * m.cols];
      for (std::size_t j = col; j < m.cols; ++j)
        irow[j] = f.sub(irow[j], f.mul(factor, prow[j]));
    }
    ++rank;
  }
  return rank;
}

void SparseMat::add_entry(std::size_t i, std::size_t j, uint64_t v) {
  v %= f.p;
  if (v == 0) return;
  row[i].emplace_back(static_cast<uint32_t>(j), v);
}

void SparseMat::finalize() {
  for (auto& r : row) {
    std::sort(r.begin(), r.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<uint32_t, uint64_t>> out;
    out.reserve(r.size());
    for (const auto& e : r) {
      if (!out.empty() && out.back().first == e.first)
        out.back().second = f.add(out.back().second, e.second);
      else
        out.push_back(e);
      if (!out.empty() && out.back().second == 0) out.pop_back();
    }
    r = std::move(out);
  }
}

std::size_t SparseMat::nnz() const {
  std::size_t n = 0;
  for (const auto& r : row) n += r.size();
  return n;
}

namespace {

using Row = std::vector<std::pair<uint32_t, uint64_t>>;

// a <- a - factor * b, both sorted by column
void axpy_row(const Field& f, Row& a, uint64_t factor, const Row& b, Row& scratch) {
  scratch.clear();
  scratch.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      scratch.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      uint64_t v = f.neg(f.mul(factor, b[j].second));
      if (v) scratch.emplace_back(b[j].first, v);
      ++j;
    } else {
      uint64_t v = f.sub(a[i].second, f.mul(factor, b[j].second));
      if (v) scratch.emplace_back(a[i].first, v);
      ++i, ++j;
    }
  }
  a.swap(scratch);
}

struct Elimination {
  Field f;
  std::size_t nrows, ncols;
  std::vector<Row>& row;
  std::vector<char> row_done, col_done;
  std::vector<uint32_t> col_count;             // exact count over active rows
  std::vector<std::vector<uint32_t>> col_rows; // lazy superset of rows holding col
  std::vector<std::vector<uint32_t>> bucket;   // rows keyed by length (lazy)
  bool parallel;

  static constexpr std::size_t kMaxBucket = 64;
  static constexpr int kCandidates = 24;

  explicit Elimination(SparseMat& m, bool par)
      : f(m.f), nrows(m.rows), ncols(m.cols), row(m.row),
        row_done(m.rows, 0), col_done(m.cols, 0),
        col_count(m.cols, 0), col_rows(m.cols), bucket(kMaxBucket + 1),
        parallel(par) {
    for (std::size_t i = 0; i < nrows; ++i) {
      for (const auto& e : row[i]) {
        ++col_count[e.first];
        col_rows[e.first].push_back(static_cast<uint32_t>(i));
      }
      if (!row[i].empty()) push_bucket(i);
    }
  }

  void push_bucket(std::size_t i) {
    bucket[std::min(row[i].size(), kMaxBucket)].push_back(static_cast<uint32_t>(i));
  }

  // choose pivot among shortest rows; returns false when matrix exhausted
  bool pick_pivot(std::size_t& pr, uint32_t& pc) {
    int seen = 0;
    unsigned long long best = ~0ull;
    pr = nrows;
    for (std::size_t len = 1; len <= kMaxBucket; ++len) {
      auto& b = bucket[len];
      while (!b.empty()) {
        uint32_t i = b.back();
        if (row_done[i] || row[i].empty() ||
            std::min(row[i].size(), kMaxBucket) != len) {
          b.pop_back();
          continue;
        }
        // score this row's columns
        for (const auto& e : row[i]) {
          unsigned long long s = static_cast<unsigned long long>(row[i].size() - 1) *
                                 (col_count[e.first] - 1);
          if (s < best) { best = s; pr = i; pc = e.first; }
        }
        ++seen;
        if (best == 0 || seen >= kCandidates) return true;
        // rotate so we don't rescore the same row forever
        b.pop_back();
        b.insert(b.begin(), i);
        break;  // move to scanning: next iteration revisits buckets
      }
      if (pr != nrows && (best == 0 || seen >= kCandidates)) return true;
    }
    if (pr != nrows) return true;
    // fall back: any active row (all rows longer than kMaxBucket)
    for (std::size_t i = 0; i < nrows; ++i) {
      if (row_done[i] || row[i].empty()) continue;
      pr = i;
      pc = row[i][0].first;
      for (const auto& e : row[i])
        if (col_count[e.first] < col_count[pc]) pc = e.first;
      return true;
    }
    return false;
  }

  std::size_t run() {
    std::size_t rank = 0;
#ifdef _OPENMP
    std::vector<Row> scratch_pool(std::max(1, omp_get_max_threads()));
#else
    std::vector<Row> scratch_pool(1);
#endif
    std::vector<std::vector<uint32_t>> old_cols;
    for (;;) {
      std::size_t pr;
      uint32_t pc = 0;
      if (!pick_pivot(pr, pc)) break;
      row_done[pr] = 1;
      col_done[pc] = 1;
      ++rank;

      uint64_t pval = 0;
      for (const auto& e : row[pr])
        if (e.first == pc) pval = e.second;
      const uint64_t pinv = f.inv(pval);
      const Row prow = row[pr];  // copy: row storage may be reused

      // decrement counts for the retired pivot row
      for (const auto& e : prow) --col_count[e.first];

      // active rows that really contain the pivot column
      std::vector<uint32_t> targets;
      {
        auto& cr = col_rows[pc];
        std::vector<uint32_t> fresh;
        for (uint32_t i : cr) {
          if (row_done[i]) continue;
          bool has = false;
          for (const auto& e : row[i])
            if (e.first == pc) { has = true; break; }
          if (has) fresh.push_back(i);
        }
        std::sort(fresh.begin(), fresh.end());
        fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
        targets = std::move(fresh);
        cr.clear();
        cr.shrink_to_fit();
      }

      old_cols.assign(targets.size(), {});
      for (std::size_t t = 0; t < targets.size(); ++t) {
        old_cols[t].reserve(row[targets[t]].size());
        for (const auto& e : row[targets[t]]) old_cols[t].push_back(e.first);
      }

#ifdef _OPENMP
      if (parallel && targets.size() > 8) {
#pragma omp parallel for schedule(dynamic, 4)
        for (std::size_t t = 0; t < targets.size(); ++t) {
          auto& r = row[targets[t]];
          uint64_t v = 0;
          for (const auto& e : r)
            if (e.first == pc) v = e.second;
          axpy_row(f, r, f.mul(v, pinv), prow, scratch_pool[omp_get_thread_num()]);
        }
      } else
#endif
      {
        for (std::size_t t = 0; t < targets.size(); ++t) {
          auto& r = row[targets[t]];
          uint64_t v = 0;
          for (const auto& e : r)
            if (e.first == pc) v = e.second;
          axpy_row(f, r, f.mul(v, pinv), prow, scratch_pool[0]);
        }
      }

      // serial bookkeeping: counts, col_rows supersets, length buckets
      for (std::size_t t = 0; t < targets.size(); ++t) {
        const uint32_t i = targets[t];
        for (uint32_t c : old_cols[t]) --col_count[c];
        for (const auto& e : row[i]) {
          ++col_count[e.first];
          col_rows[e.first].push_back(i);
        }
        if (!row[i].empty()) push_bucket(i);
      }
    }
    return rank;
  }
};

}  // namespace

std::size_t rank_sparse(SparseMat m, bool parallel) {
  m.finalize();
  Elimination e(m, parallel);
  return e.run();
}

}  // namespace p3m::modp
