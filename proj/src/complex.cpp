#include "p3m/complex.hpp"

#include <sstream>

namespace p3m::cx {

using ring::HomogPoly;

bool ValidationReport::all_ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.ok ? "[ok]   " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  return os.str();
}

namespace {

void require_shape(const Monad& m) {
  if (!(m.alpha.src == m.A) || !(m.alpha.dst == m.B) || !(m.beta.src == m.B) ||
      !(m.beta.dst == m.C))
    throw std::invalid_argument("monad: matrix shapes disagree with terms");
  if (m.alpha.ent.size() != m.B.rank() || m.beta.ent.size() != m.C.rank())
    throw std::invalid_argument("monad: entry array shape mismatch");
}

CheckResult check_degrees(const GradedMatrix& g, const std::string& name) {
  for (std::size_t i = 0; i < g.dst.rank(); ++i)
    for (std::size_t j = 0; j < g.src.rank(); ++j) {
      const auto& p = g.ent[i][j];
      const int want = g.dst.twists[i] - g.src.twists[j];
      if (!p.is_zero() && (p.degree() != want || want < 0))
        return {name, false,
                "entry (" + std::to_string(i) + "," + std::to_string(j) +
                    ") violates degree " + std::to_string(want)};
    }
  return {name, true, ""};
}

std::string point_string(const std::array<la::Rat, 4>& pt) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < 4; ++i) {
    if (i) os << ':';
    os << pt[i].get_str();
  }
  os << ']';
  return os.str();
}

CheckResult fiberwise_check(const GradedMatrix& g, bool need_cols_le_rows,
                            const std::string& name,
                            const gb::SampleParams& params) {
  const std::size_t rows = g.dst.rank(), cols = g.src.rank();
  if (rows == 0 || cols == 0) return {name, true, "trivial (rank-0 term)"};
  if (need_cols_le_rows ? cols > rows : rows > cols)
    return {name, false, "shape cannot have the required fiberwise rank"};
  gb::FiberVerdict v = gb::fiberwise_auto(g, params);
  switch (v.kind) {
    case gb::VerdictKind::Everywhere:
      return {name, true, "certified everywhere"};
    case gb::VerdictKind::ProbablyEverywhere:
      return {name, true,
              "no failure in " + std::to_string(v.samples) + " sampled points"};
    case gb::VerdictKind::Witness:
    default: {
      std::string d = "rank drops";
      if (v.point) d += " at " + point_string(*v.point);
      if (v.point_mod_p) {
        d += " at a mod-p point (";
        for (int i = 0; i < 4; ++i)
          d += (i ? "," : "") + std::to_string((*v.point_mod_p)[i]);
        d += ")";
      }
      return {name, false, d};
    }
  }
}

}  // namespace

ValidationReport validate_monad(const Monad& m, Level level,
                                const gb::SampleParams& params) {
  require_shape(m);
  ValidationReport rep;
  rep.checks.push_back(check_degrees(m.alpha, "alpha degree constraints"));
  rep.checks.push_back(check_degrees(m.beta, "beta degree constraints"));

  GradedMatrix comp = m.beta.compose(m.alpha);
  CheckResult ba{"beta o alpha = 0", true, ""};
  for (std::size_t i = 0; i < comp.dst.rank() && ba.ok; ++i)
    for (std::size_t j = 0; j < comp.src.rank() && ba.ok; ++j)
      if (!comp.ent[i][j].is_zero()) {
        ba.ok = false;
        ba.detail = "entry (" + std::to_string(i) + "," + std::to_string(j) +
                    ") = " + ring::to_string(comp.ent[i][j]);
      }
  rep.checks.push_back(ba);

  if (level == Level::fiberwise) {
    rep.checks.push_back(
        fiberwise_check(m.alpha, true, "alpha fiberwise injective", params));
    rep.checks.push_back(
        fiberwise_check(m.beta, false, "beta fiberwise surjective", params));
  }
  return rep;
}

int BoundedComplex::min_degree() const {
  return terms.empty() ? 0 : terms.begin()->first;
}

int BoundedComplex::max_degree() const {
  return terms.empty() ? 0 : terms.rbegin()->first;
}

const LineBundleSum& BoundedComplex::term(int p) const {
  static const LineBundleSum empty;
  auto it = terms.find(p);
  return it == terms.end() ? empty : it->second;
}

bool BoundedComplex::d_squared_zero() const {
  for (const auto& [p, d] : diffs) {
    auto next = diffs.find(p + 1);
    if (next == diffs.end()) continue;
    if (!next->second.compose(d).is_zero()) return false;
  }
  return true;
}

BoundedComplex monad_complex(const Monad& m) {
  BoundedComplex c;
  c.terms[-1] = m.A;
  c.terms[0] = m.B;
  c.terms[1] = m.C;
  c.diffs[-1] = m.alpha;
  c.diffs[0] = m.beta;
  return c;
}

namespace {

/// Slot layout of (monad (x) monad) in one total degree.
struct TensorLayout {
  struct Summand {
    int i, j;  // factor degrees, i + j = p
    std::size_t rank_i, rank_j, offset;
  };
  std::vector<Summand> summands;
  std::size_t total = 0;

  TensorLayout(const Monad& m, const Monad& n, int p) {
    auto rank_of = [](const Monad& mm, int d) -> const LineBundleSum* {
      switch (d) {
        case -1: return &mm.A;
        case 0: return &mm.B;
        case 1: return &mm.C;
        default: return nullptr;
      }
    };
    for (int i = -1; i <= 1; ++i) {
      const LineBundleSum* mi = rank_of(m, i);
      const LineBundleSum* nj = rank_of(n, p - i);
      if (!mi || !nj) continue;
      if (mi->rank() == 0 || nj->rank() == 0) continue;
      summands.push_back({i, p - i, mi->rank(), nj->rank(), total});
      total += mi->rank() * nj->rank();
    }
  }

  std::size_t slot(int i, std::size_t a, std::size_t b) const {
    for (const auto& s : summands)
      if (s.i == i) return s.offset + a * s.rank_j + b;
    throw std::logic_error("TensorLayout::slot");
  }

  struct Decoded {
    int i, j;
    std::size_t a, b;
  };
  Decoded decode(std::size_t slot_index) const {
    for (const auto& s : summands)
      if (slot_index < s.offset + s.rank_i * s.rank_j) {
        std::size_t local = slot_index - s.offset;
        return {s.i, s.j, local / s.rank_j, local % s.rank_j};
      }
    throw std::logic_error("TensorLayout::decode");
  }
};

const LineBundleSum& monad_term(const Monad& m, int d) {
  static const LineBundleSum empty;
  switch (d) {
    case -1: return m.A;
    case 0: return m.B;
    case 1: return m.C;
    default: return empty;
  }
}

const GradedMatrix* monad_diff(const Monad& m, int d) {
  if (d == -1) return &m.alpha;
  if (d == 0) return &m.beta;
  return nullptr;
}

}  // namespace

BoundedComplex tensor_total(const Monad& m, const Monad& n) {
  BoundedComplex out;
  std::map<int, TensorLayout> layouts;
  for (int p = -2; p <= 2; ++p) {
    TensorLayout lay(m, n, p);
    LineBundleSum sum;
    for (const auto& s : lay.summands) {
      const auto& ti = monad_term(m, s.i).twists;
      const auto& tj = monad_term(n, s.j).twists;
      for (std::size_t a = 0; a < s.rank_i; ++a)
        for (std::size_t b = 0; b < s.rank_j; ++b)
          sum.twists.push_back(ti[a] + tj[b]);
    }
    layouts.emplace(p, std::move(lay));
    if (!sum.twists.empty()) out.terms[p] = std::move(sum);
  }

  for (int p = -2; p <= 1; ++p) {
    const TensorLayout& src = layouts.at(p);
    const TensorLayout& dst = layouts.at(p + 1);
    if (src.total == 0 || dst.total == 0) continue;
    GradedMatrix d(out.term(p), out.term(p + 1));
    for (const auto& s : src.summands) {
      // d_M (x) id on the first factor
      if (const GradedMatrix* dm = monad_diff(m, s.i)) {
        for (std::size_t ap = 0; ap < dm->dst.rank(); ++ap)
          for (std::size_t a = 0; a < s.rank_i; ++a) {
            const HomogPoly& e = dm->ent[ap][a];
            if (e.is_zero()) continue;
            for (std::size_t b = 0; b < s.rank_j; ++b)
              d.set(dst.slot(s.i + 1, ap, b), src.slot(s.i, a, b), e);
          }
      }
      // (-1)^i id (x) d_N on the second factor
      if (const GradedMatrix* dn = monad_diff(n, s.j)) {
        const bool negate = (s.i % 2) != 0;
        for (std::size_t bp = 0; bp < dn->dst.rank(); ++bp)
          for (std::size_t b = 0; b < s.rank_j; ++b) {
            const HomogPoly& e = dn->ent[bp][b];
            if (e.is_zero()) continue;
            for (std::size_t a = 0; a < s.rank_i; ++a)
              d.set(dst.slot(s.i, a, bp), src.slot(s.i, a, b), negate ? -e : e);
          }
      }
    }
    out.diffs[p] = std::move(d);
  }
  return out;
}

namespace {

/// Shared construction for the symmetric (eps = +1) and antisymmetric
/// (eps = -1) summands of M (x) M under the graded swap
/// tau(u (x) v) = (-1)^{pq} v (x) u.
BoundedComplex graded_tensor_part(const Monad& m, int eps) {
  BoundedComplex T = tensor_total(m, m);

  struct Element {
    std::size_t lead;
    std::size_t partner;  // == lead when the slot is its own mirror
    int partner_coef;     // 0 when partner == lead
    int twist;
  };
  std::map<int, std::vector<Element>> elems;
  std::map<int, TensorLayout> layouts;
  for (int p = -2; p <= 2; ++p) layouts.emplace(p, TensorLayout(m, m, p));

  BoundedComplex out;
  for (int p = -2; p <= 2; ++p) {
    const TensorLayout& lay = layouts.at(p);
    const auto& twists = T.term(p).twists;
    LineBundleSum sum;
    for (std::size_t s = 0; s < lay.total; ++s) {
      auto dec = lay.decode(s);
      std::size_t mirror = lay.slot(dec.j, dec.b, dec.a);
      int sigma = ((dec.i * dec.j) % 2 != 0) ? -1 : 1;
      if (mirror == s) {
        if (eps * sigma == 1) {
          elems[p].push_back({s, s, 0, twists[s]});
          sum.twists.push_back(twists[s]);
        }
      } else if (s < mirror) {
        elems[p].push_back({s, mirror, eps * sigma, twists[s]});
        sum.twists.push_back(twists[s]);
      }
    }
    if (!sum.twists.empty()) out.terms[p] = std::move(sum);
  }

  for (int p = -2; p <= 1; ++p) {
    auto sit = elems.find(p);
    auto dit = elems.find(p + 1);
    if (sit == elems.end() || dit == elems.end()) continue;
    auto tdiff = T.diffs.find(p);
    if (tdiff == T.diffs.end()) continue;
    const GradedMatrix& dT = tdiff->second;
    GradedMatrix d(out.term(p), out.term(p + 1));
    for (std::size_t r = 0; r < dit->second.size(); ++r) {
      const Element& er = dit->second[r];
      for (std::size_t c = 0; c < sit->second.size(); ++c) {
        const Element& ec = sit->second[c];
        HomogPoly acc(er.twist - ec.twist);
        for (const auto& [mono, co] : dT.ent[er.lead][ec.lead].terms())
          acc.add_term(mono, co);
        if (ec.partner_coef != 0)
          for (const auto& [mono, co] : dT.ent[er.lead][ec.partner].terms())
            acc.add_term(mono, co * ec.partner_coef);
        if (!acc.is_zero()) d.set(r, c, std::move(acc));
      }
    }
    out.diffs[p] = std::move(d);
  }
  return out;
}

}  // namespace

BoundedComplex sym_part(const Monad& m) { return graded_tensor_part(m, +1); }

BoundedComplex antisym_part(const Monad& m) { return graded_tensor_part(m, -1); }

Monad dual_monad(const Monad& m) {
  Monad d;
  d.A = m.C.negated();
  d.B = m.B.negated();
  d.C = m.A.negated();
  d.alpha = m.beta.dual();
  d.beta = m.alpha.dual();
  return d;
}

}  // namespace p3m::cx
