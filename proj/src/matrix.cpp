#include "p3m/matrix.hpp"

#include <algorithm>
#include <optional>

#include "p3m/modp.hpp"

namespace p3m::la {

void RationalMatrix::add_entry(std::size_t i, std::size_t j, Rat v) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("RationalMatrix::add_entry");
  if (v == 0) return;
  ent_.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j), std::move(v)});
  normalized_ = false;
}

void RationalMatrix::normalize() const {
  if (normalized_) return;
  std::sort(ent_.begin(), ent_.end(), [](const Entry& a, const Entry& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  });
  std::vector<Entry> out;
  out.reserve(ent_.size());
  for (auto& e : ent_) {
    if (!out.empty() && out.back().r == e.r && out.back().c == e.c)
      out.back().v += e.v;
    else
      out.push_back(std::move(e));
    if (!out.empty() && out.back().v == 0) out.pop_back();
  }
  ent_ = std::move(out);
  normalized_ = true;
}

const std::vector<RationalMatrix::Entry>& RationalMatrix::entries() const {
  normalize();
  return ent_;
}

Rat RationalMatrix::get(std::size_t i, std::size_t j) const {
  normalize();
  Entry probe{static_cast<uint32_t>(i), static_cast<uint32_t>(j), 0};
  auto it = std::lower_bound(ent_.begin(), ent_.end(), probe,
                             [](const Entry& a, const Entry& b) {
                               return a.r != b.r ? a.r < b.r : a.c < b.c;
                             });
  if (it != ent_.end() && it->r == i && it->c == j) return it->v;
  return 0;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.add_entry(i, i, 1);
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (const auto& e : entries()) t.add_entry(e.c, e.r, e.v);
  return t;
}

RationalMatrix RationalMatrix::mul(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("RationalMatrix::mul shape");
  // index o by row
  std::vector<std::vector<const Entry*>> orow(o.rows_);
  for (const auto& e : o.entries()) orow[e.r].push_back(&e);
  RationalMatrix out(rows_, o.cols_);
  for (const auto& e : entries())
    for (const Entry* f : orow[e.c]) out.add_entry(e.r, f->c, e.v * f->v);
  return out;
}

RationalMatrix RationalMatrix::hstack(const RationalMatrix& o) const {
  if (rows_ != o.rows_) throw std::invalid_argument("hstack shape");
  RationalMatrix out(rows_, cols_ + o.cols_);
  for (const auto& e : entries()) out.add_entry(e.r, e.c, e.v);
  for (const auto& e : o.entries()) out.add_entry(e.r, cols_ + e.c, e.v);
  return out;
}

RationalMatrix RationalMatrix::vstack(const RationalMatrix& o) const {
  if (cols_ != o.cols_) throw std::invalid_argument("vstack shape");
  RationalMatrix out(rows_ + o.rows_, cols_);
  for (const auto& e : entries()) out.add_entry(e.r, e.c, e.v);
  for (const auto& e : o.entries()) out.add_entry(rows_ + e.r, e.c, e.v);
  return out;
}

RationalMatrix RationalMatrix::select_cols(const std::vector<std::size_t>& sel) const {
  std::vector<std::size_t> where(cols_, SIZE_MAX);
  for (std::size_t k = 0; k < sel.size(); ++k) where[sel[k]] = k;
  RationalMatrix out(rows_, sel.size());
  for (const auto& e : entries())
    if (where[e.c] != SIZE_MAX) out.add_entry(e.r, where[e.c], e.v);
  return out;
}

std::vector<std::vector<Rat>> RationalMatrix::to_dense() const {
  std::vector<std::vector<Rat>> d(rows_, std::vector<Rat>(cols_, Rat(0)));
  for (const auto& e : entries()) d[e.r][e.c] = e.v;
  return d;
}

RationalMatrix RationalMatrix::from_dense(const std::vector<std::vector<Rat>>& d,
                                          std::size_t cols) {
  RationalMatrix m(d.size(), cols);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (d[i][j] != 0) m.add_entry(i, j, d[i][j]);
  return m;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  const auto& a = entries();
  const auto& b = o.entries();
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].r != b[k].r || a[k].c != b[k].c || a[k].v != b[k].v) return false;
  return true;
}

std::vector<std::size_t> rref(std::vector<std::vector<Rat>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    const Rat inv = 1 / a[r][c];
    for (std::size_t j = c; j < a[r].size(); ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

namespace {

/// Fraction-free Bareiss elimination on integer-scaled rows.
std::size_t rank_exact(const RationalMatrix& m) {
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols(), 0));
  {
    std::vector<mpz_class> rowlcm(m.rows(), 1);
    for (const auto& e : m.entries())
      mpz_lcm(rowlcm[e.r].get_mpz_t(), rowlcm[e.r].get_mpz_t(),
              e.v.get_den().get_mpz_t());
    for (const auto& e : m.entries()) {
      Rat v = e.v * Rat(rowlcm[e.r]);
      a[e.r][e.c] = v.get_num();
    }
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    const mpz_class p = a[rank][c];
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) {
        for (std::size_t j = c + 1; j < m.cols(); ++j) {
          a[i][j] *= p;
          mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
        }
      } else {
        const mpz_class f = a[i][c];
        for (std::size_t j = c + 1; j < m.cols(); ++j) {
          a[i][j] = a[i][j] * p - f * a[rank][j];
          mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
        }
        a[i][c] = 0;
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

/// Reduce mod p; returns false when some denominator vanishes mod p.
bool reduce_mod(const RationalMatrix& m, const modp::Field& f,
                modp::SparseMat& out) {
  out = modp::SparseMat(f, m.rows(), m.cols());
  for (const auto& e : m.entries()) {
    uint64_t den = mpz_fdiv_ui(e.v.get_den().get_mpz_t(), f.p);
    if (den == 0) return false;
    uint64_t num = mpz_fdiv_ui(e.v.get_num().get_mpz_t(), f.p);
    out.add_entry(e.r, e.c, f.mul(num, f.inv(den)));
  }
  out.finalize();
  return true;
}

std::size_t rank_one_prime(const RationalMatrix& m, uint64_t p, bool parallel,
                           bool& ok) {
  modp::Field f{p};
  modp::SparseMat s;
  if (!reduce_mod(m, f, s)) {
    ok = false;
    return 0;
  }
  ok = true;
  if (m.rows() < 64 && m.cols() < 64) {
    modp::DenseMat d(f, m.rows(), m.cols());
    for (std::size_t i = 0; i < s.rows; ++i)
      for (const auto& e : s.row[i]) d.at(i, e.first) = e.second;
    return parallel ? modp::rank_dense_parallel(d) : modp::rank_dense_serial(d);
  }
  return modp::rank_sparse(std::move(s), parallel);
}

std::size_t rank_modular(const RationalMatrix& m, const RankConfig& cfg,
                         bool& agree) {
  agree = true;
  std::vector<uint64_t> primes = modp::random_primes(cfg.num_primes, cfg.seed);
  uint64_t extra_seed = cfg.seed;
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k < primes.size(); ++k) {
    bool ok = false;
    std::size_t r = rank_one_prime(m, primes[k], cfg.parallel, ok);
    while (!ok) {
      primes[k] = modp::random_primes(1, ++extra_seed)[0];
      r = rank_one_prime(m, primes[k], cfg.parallel, ok);
    }
    ranks.push_back(r);
  }
  std::size_t best = 0;
  for (std::size_t r : ranks) best = std::max(best, r);
  for (std::size_t r : ranks)
    if (r != best) agree = false;
  return best;
}

}  // namespace

std::size_t rank(const RationalMatrix& m, const RankConfig& cfg) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  switch (cfg.strategy) {
    case RankConfig::Strategy::exact:
      return rank_exact(m);
    case RankConfig::Strategy::modular: {
      bool agree = true;
      std::size_t r = rank_modular(m, cfg, agree);
      if (!agree) return rank_exact(m);
      return r;
    }
    case RankConfig::Strategy::hybrid:
    default: {
      if (m.rows() <= cfg.threshold && m.cols() <= cfg.threshold)
        return rank_exact(m);
      bool agree = true;
      std::size_t r = rank_modular(m, cfg, agree);
      if (!agree) return rank_exact(m);
      return r;
    }
  }
}

RationalMatrix kernel_basis(const RationalMatrix& m) {
  auto a = m.to_dense();
  std::vector<std::size_t> pivots = rref(a, m.cols());
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t c : pivots) is_pivot[c] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RationalMatrix k(m.cols(), free_cols.size());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    const std::size_t fc = free_cols[t];
    k.add_entry(fc, t, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (a[r][fc] != 0) k.add_entry(pivots[r], t, -a[r][fc]);
  }
  return k;
}

namespace {

/// Solve A·X = B column by column via one RREF of [A | B].
/// Returns X (cols(A) × cols(B)) or nullopt when any column is inconsistent.
std::optional<RationalMatrix> solve_multi(const RationalMatrix& A,
                                          const RationalMatrix& B) {
  const std::size_t na = A.cols();
  auto aug = A.hstack(B).to_dense();
  std::vector<std::size_t> pivots = rref(aug, na + B.cols());
  for (std::size_t c : pivots)
    if (c >= na) return std::nullopt;
  RationalMatrix x(na, B.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < B.cols(); ++j)
      if (aug[r][na + j] != 0) x.add_entry(pivots[r], j, aug[r][na + j]);
  return x;
}

}  // namespace

Subquotient Subquotient::full(std::size_t n) {
  Subquotient s;
  s.ambient_dim = n;
  s.sub_basis = RationalMatrix::identity(n);
  s.denom_basis = RationalMatrix(n, 0);
  return s;
}

bool Subquotient::denominator_contained() const {
  RankConfig exact{RankConfig::Strategy::exact};
  return rank(sub_basis, exact) == rank(sub_basis.hstack(denom_basis), exact);
}

std::vector<std::size_t> Subquotient::representative_indices() const {
  // pivots of [D | S] falling in the S block pick columns of S independent mod D
  auto aug = denom_basis.hstack(sub_basis).to_dense();
  std::vector<std::size_t> pivots = rref(aug, denom_basis.cols() + sub_basis.cols());
  std::vector<std::size_t> idx;
  for (std::size_t c : pivots)
    if (c >= denom_basis.cols()) idx.push_back(c - denom_basis.cols());
  return idx;
}

RationalMatrix Subquotient::representatives() const {
  return sub_basis.select_cols(representative_indices());
}

std::size_t Subquotient::dim() const { return representative_indices().size(); }

RationalMatrix Subquotient::coordinates(const RationalMatrix& v) const {
  RationalMatrix reps = representatives();
  auto sol = solve_multi(reps.hstack(denom_basis), v);
  if (!sol)
    throw WellDefinednessError("vector not contained in the subquotient's subspace");
  // keep only the coefficients on the representatives (top rows)
  RationalMatrix out(reps.cols(), v.cols());
  for (const auto& e : sol->entries())
    if (e.r < reps.cols()) out.add_entry(e.r, e.c, e.v);
  return out;
}

RationalMatrix induced_map(const RationalMatrix& f, const Subquotient& src,
                           const Subquotient& dst) {
  if (f.cols() != src.ambient_dim || f.rows() != dst.ambient_dim)
    throw std::invalid_argument("induced_map: ambient shape mismatch");
  // f(D_src) must land in D_dst
  if (src.denom_basis.cols() > 0) {
    auto fd = f.mul(src.denom_basis);
    if (!solve_multi(dst.denom_basis, fd))
      throw WellDefinednessError("f does not map denominator into denominator");
  }
  RationalMatrix reps = src.representatives();
  RationalMatrix img = f.mul(reps);
  return dst.coordinates(img);
}

}  // namespace p3m::la
