#include <algorithm>
#include <unordered_map>
#include <vector>

#include "p3m/bundle.hpp"
#include "p3m/cohomology.hpp"

namespace p3m::coh {

using bundle::LineBundleSum;
using la::RationalMatrix;
using la::RankConfig;

la::RankConfig cech_default_rank() {
  RankConfig cfg;
  cfg.strategy = RankConfig::Strategy::modular;
  cfg.parallel = true;
  return cfg;
}

namespace {

/// One truncated Cech basis element: summand s of the term, chart set given as
/// a bit mask (|mask| = q + 1), Laurent exponents e with sum = twisted degree,
/// e_i >= -B for i in the mask and e_i >= 0 otherwise.
struct Elem {
  int s;
  uint8_t mask;
  std::array<int, 4> e;
};

uint64_t encode(int s, uint8_t mask, const std::array<int, 4>& e, int B) {
  uint64_t key = static_cast<uint64_t>(s);
  key = key << 4 | mask;
  for (int i = 0; i < 4; ++i)
    key = key << 12 | static_cast<uint64_t>(e[i] + B);
  return key;
}

struct Space {
  std::vector<Elem> elems;
  std::unordered_map<uint64_t, std::size_t> index;

  void add(const Elem& el, int B) {
    index.emplace(encode(el.s, el.mask, el.e, B), elems.size());
    elems.push_back(el);
  }
  std::size_t dim() const { return elems.size(); }
};

void enumerate_monomials(int dd, uint8_t mask, int B, int s, Space& out) {
  std::array<int, 4> lo;
  for (int i = 0; i < 4; ++i) lo[i] = (mask >> i & 1) ? -B : 0;
  const int lo_sum = lo[0] + lo[1] + lo[2] + lo[3];
  if (dd < lo_sum) return;
  std::array<int, 4> e{};
  for (e[0] = lo[0]; e[0] <= dd - (lo_sum - lo[0]); ++e[0])
    for (e[1] = lo[1]; e[0] + e[1] <= dd - lo[2] - lo[3]; ++e[1])
      for (e[2] = lo[2]; e[0] + e[1] + e[2] <= dd - lo[3]; ++e[2]) {
        e[3] = dd - e[0] - e[1] - e[2];
        out.add({s, mask, e}, B);
      }
}

const std::vector<uint8_t>& masks_of_size(int q) {
  static const std::vector<uint8_t> by_q[4] = {
      {0x1, 0x2, 0x4, 0x8},
      {0x3, 0x5, 0x9, 0x6, 0xa, 0xc},
      {0x7, 0xb, 0xd, 0xe},
      {0xf}};
  return by_q[q];
}

Space cech_space(const LineBundleSum& term, int l, int q, int B) {
  Space sp;
  for (std::size_t s = 0; s < term.rank(); ++s)
    for (uint8_t mask : masks_of_size(q))
      enumerate_monomials(term.twists[s] + l, mask, B, static_cast<int>(s), sp);
  return sp;
}

int delta_sign(uint8_t mask, int j) {
  // position of chart j among the set bits of mask | (1 << j)
  int pos = 0;
  for (int i = 0; i < j; ++i)
    if (mask >> i & 1) ++pos;
  return pos % 2 == 0 ? 1 : -1;
}

/// Cohomology dims of the truncated Cech complex of a single O(dd).
std::array<long long, 4> line_cohomology(int dd, int B, const RankConfig& cfg) {
  LineBundleSum single{dd};
  std::array<Space, 4> sp;
  for (int q = 0; q < 4; ++q) sp[q] = cech_space(single, 0, q, B);
  std::array<std::size_t, 4> rk{};  // rank of delta_q : C^q -> C^{q+1}
  for (int q = 0; q < 3; ++q) {
    RationalMatrix d(sp[q + 1].dim(), sp[q].dim());
    for (std::size_t c = 0; c < sp[q].dim(); ++c) {
      const Elem& el = sp[q].elems[c];
      for (int j = 0; j < 4; ++j) {
        if (el.mask >> j & 1) continue;
        uint8_t nm = el.mask | static_cast<uint8_t>(1 << j);
        auto it = sp[q + 1].index.find(encode(el.s, nm, el.e, B));
        if (it != sp[q + 1].index.end())
          d.add_entry(it->second, c, la::Rat(delta_sign(el.mask, j)));
      }
    }
    rk[q] = la::rank(d, cfg);
  }
  std::array<long long, 4> h{};
  for (int q = 0; q < 4; ++q) {
    h[q] = static_cast<long long>(sp[q].dim()) - static_cast<long long>(rk[q]);
    if (q > 0) h[q] -= static_cast<long long>(rk[q - 1]);
  }
  return h;
}

bool terms_conform(const cx::BoundedComplex& T, int l, int B,
                   const RankConfig& cfg) {
  std::set<int> degrees;
  for (const auto& [p, term] : T.terms)
    for (int t : term.twists) degrees.insert(t + l);
  for (int dd : degrees) {
    auto h = line_cohomology(dd, B, cfg);
    for (int i = 0; i < 4; ++i)
      if (h[i] != bundle::bott_h(dd, i)) return false;
  }
  return true;
}

}  // namespace

CechResult cech_hypercohomology(const cx::BoundedComplex& T, int l,
                                std::optional<int> bound,
                                const la::RankConfig& cfg) {
  if (T.terms.empty()) return {};

  int d_min = 0;
  bool first = true;
  for (const auto& [p, term] : T.terms)
    for (int t : term.twists) {
      int dd = t + l;
      d_min = first ? dd : std::min(d_min, dd);
      first = false;
    }
  int B = bound ? *bound : std::max(1, -d_min - 3);

  int escalations = 0;
  while (!terms_conform(T, l, B, cfg)) {
    if (escalations == 2)
      throw TruncationUnstable(
          "line-bundle self-check still fails at truncation bound " +
          std::to_string(B));
    B *= 2;
    ++escalations;
  }

  const int pmin = T.min_degree(), pmax = T.max_degree();
  // spaces indexed by (p, q); total degree n = p + q
  std::map<std::pair<int, int>, Space> spaces;
  for (int p = pmin; p <= pmax; ++p)
    for (int q = 0; q < 4; ++q)
      spaces[{p, q}] = cech_space(T.term(p), l, q, B);

  auto total_dim = [&](int n) {
    std::size_t dim = 0;
    for (int p = pmin; p <= pmax; ++p)
      if (n - p >= 0 && n - p < 4) dim += spaces[{p, n - p}].dim();
    return dim;
  };
  auto offset_of = [&](int n, int p) {
    std::size_t off = 0;
    for (int pp = pmin; pp < p; ++pp)
      if (n - pp >= 0 && n - pp < 4) off += spaces[{pp, n - pp}].dim();
    return off;
  };

  std::map<int, std::size_t> rank_d;  // rank of D_n : Tot^n -> Tot^{n+1}
  for (int n = pmin; n <= pmax + 3; ++n) {
    RationalMatrix D(total_dim(n + 1), total_dim(n));
    for (int p = pmin; p <= pmax; ++p) {
      const int q = n - p;
      if (q < 0 || q >= 4) continue;
      const Space& src = spaces[{p, q}];
      const std::size_t col0 = offset_of(n, p);
      // horizontal: the complex differential, degree (p, q) -> (p + 1, q)
      const auto dit = T.diffs.find(p);
      const Space* hdst =
          p + 1 <= pmax ? &spaces[{p + 1, q}] : nullptr;
      const std::size_t hoff = hdst ? offset_of(n + 1, p + 1) : 0;
      // vertical: (-1)^p delta, degree (p, q) -> (p, q + 1)
      const Space* vdst = q + 1 < 4 ? &spaces[{p, q + 1}] : nullptr;
      const std::size_t voff = vdst ? offset_of(n + 1, p) : 0;
      const int psign = p % 2 == 0 ? 1 : -1;

      for (std::size_t c = 0; c < src.dim(); ++c) {
        const Elem& el = src.elems[c];
        if (hdst && dit != T.diffs.end()) {
          const auto& d = dit->second;
          for (std::size_t i = 0; i < d.dst.rank(); ++i) {
            const auto& f = d.ent[i][el.s];
            if (f.is_zero()) continue;
            for (const auto& [mono, coef] : f.terms()) {
              std::array<int, 4> e2 = el.e;
              for (int v = 0; v < 4; ++v) e2[v] += mono.e[v];
              auto it = hdst->index.find(
                  encode(static_cast<int>(i), el.mask, e2, B));
              if (it != hdst->index.end())
                D.add_entry(hoff + it->second, col0 + c, coef);
            }
          }
        }
        if (vdst) {
          for (int j = 0; j < 4; ++j) {
            if (el.mask >> j & 1) continue;
            uint8_t nm = el.mask | static_cast<uint8_t>(1 << j);
            auto it = vdst->index.find(encode(el.s, nm, el.e, B));
            if (it != vdst->index.end())
              D.add_entry(voff + it->second, col0 + c,
                          la::Rat(psign * delta_sign(el.mask, j)));
          }
        }
      }
    }
    rank_d[n] = la::rank(D, cfg);
  }

  CechResult out;
  out.bound_used = B;
  out.escalations = escalations;
  for (int n = pmin; n <= pmax + 3; ++n) {
    long long h = static_cast<long long>(total_dim(n));
    h -= static_cast<long long>(rank_d[n]);
    auto prev = rank_d.find(n - 1);
    if (prev != rank_d.end()) h -= static_cast<long long>(prev->second);
    out.h[n] = h;
  }
  return out;
}

}  // namespace p3m::coh
