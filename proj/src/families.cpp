#include "p3m/families.hpp"

#include <random>
#include <sstream>

#include "p3m/bundle.hpp"

namespace p3m::fam {

using bundle::GradedMatrix;
using bundle::LineBundleSum;
using la::RationalMatrix;
using ring::Monomial;

namespace {

const la::RankConfig kExact{la::RankConfig::Strategy::exact};

HomogPoly linear_form(const std::array<Rat, 4>& coeffs) {
  HomogPoly p(1);
  for (int v = 0; v < 4; ++v)
    if (coeffs[v] != 0) {
      Monomial m;
      m.e[v] = 1;
      p.add_term(m, coeffs[v]);
    }
  return p;
}

}  // namespace

NullCorrelation make_null_correlation(const std::array<Rat, 6>& w) {
  bool all_zero = true;
  for (const auto& c : w)
    if (c != 0) all_zero = false;
  if (all_zero) throw ZeroForm("the 2-form is zero");

  // skew matrix of the form
  Rat q[4][4] = {};
  q[0][1] = w[0]; q[0][2] = w[1]; q[0][3] = w[2];
  q[1][2] = w[3]; q[1][3] = w[4]; q[2][3] = w[5];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) q[i][j] = -q[j][i];

  NullCorrelation out;
  out.pfaffian = w[0] * w[5] - w[1] * w[4] + w[2] * w[3];
  out.locally_free = out.pfaffian != 0;

  Monad& m = out.monad;
  m.A = LineBundleSum{-1};
  m.B = LineBundleSum::repeated(0, 4);
  m.C = LineBundleSum{1};
  m.alpha = GradedMatrix(m.A, m.B);
  for (int i = 0; i < 4; ++i)
    m.alpha.set(i, 0, linear_form({q[i][0], q[i][1], q[i][2], q[i][3]}));
  m.beta = GradedMatrix(m.B, m.C);
  for (int v = 0; v < 4; ++v) m.beta.set(0, v, HomogPoly::variable(v));

  if (!out.locally_free) {
    RationalMatrix qm(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (q[i][j] != 0) qm.add_entry(i, j, q[i][j]);
    RationalMatrix k = kernel_basis(qm);
    if (k.cols() != 2)
      throw ZeroForm("degenerate 2-form does not have rank 2");
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 4; ++i) out.line_span[c][i] = k.get(i, c);
  }
  return out;
}

Monad make_rank4_charge1(const ExtensionData& d) {
  Monad m;
  m.A = LineBundleSum{-1};
  m.B = LineBundleSum::repeated(0, 6);
  m.C = LineBundleSum{1};
  m.alpha = GradedMatrix(m.A, m.B);
  m.alpha.set(0, 0, HomogPoly::variable(1));
  m.alpha.set(1, 0, -HomogPoly::variable(0));
  m.alpha.set(4, 0, linear_form({d.v1[0], d.v2[0], d.v3[0], d.v4[0]}));
  m.alpha.set(5, 0, linear_form({d.v1[1], d.v2[1], d.v3[1], d.v4[1]}));
  m.beta = GradedMatrix(m.B, m.C);
  for (int v = 0; v < 4; ++v) m.beta.set(0, v, HomogPoly::variable(v));
  return m;
}

std::string ExtVerdict::describe() const {
  switch (kind) {
    case ExtKind::LocallyFree:
      return "locally free";
    case ExtKind::ReflexivePoint: {
      std::ostringstream os;
      os << "reflexive, singular point [";
      for (int i = 0; i < 4; ++i) os << (i ? ":" : "") << point[i].get_str();
      os << "]";
      return os.str();
    }
    case ExtKind::TorsionFreeLine:
    default:
      return "torsion free, singular along the line x = y = 0";
  }
}

ExtVerdict classify_extension(const ExtensionData& d) {
  ExtVerdict v;
  Rat det = d.v3[0] * d.v4[1] - d.v3[1] * d.v4[0];
  if (det != 0) {
    v.kind = ExtKind::LocallyFree;
    return v;
  }
  const bool v3_zero = d.v3[0] == 0 && d.v3[1] == 0;
  const bool v4_zero = d.v4[0] == 0 && d.v4[1] == 0;
  if (v3_zero && v4_zero) {
    v.kind = ExtKind::TorsionFreeLine;
    return v;
  }
  v.kind = ExtKind::ReflexivePoint;
  if (!v4_zero) {
    Rat lambda = d.v4[0] != 0 ? d.v3[0] / d.v4[0] : d.v3[1] / d.v4[1];
    v.point = {Rat(0), Rat(0), Rat(1), -lambda};
  } else {
    v.point = {Rat(0), Rat(0), Rat(0), Rat(1)};
  }
  return v;
}

namespace {

using TermMap = std::map<Monomial, Rat, ring::GrlexGreater>;

void accumulate(TermMap& acc, const HomogPoly& p, const Rat& c) {
  if (c == 0) return;
  for (const auto& [m, v] : p.terms()) {
    acc[m] += v * c;
    if (acc[m] == 0) acc.erase(m);
  }
}

bool is_skew(const RationalMatrix& q) {
  if (q.rows() != q.cols()) return false;
  for (const auto& e : q.entries())
    if (q.get(e.c, e.r) != -e.v) return false;
  for (std::size_t i = 0; i < q.rows(); ++i)
    if (q.get(i, i) != 0) return false;
  return true;
}

}  // namespace

bool verify_symplectic(const Monad& m, const SymplecticCert& cert) {
  const std::size_t n = m.B.rank();
  if (cert.q.rows() != n || cert.q.cols() != n) return false;
  if (cert.g == 0 || cert.h == 0) return false;
  if (!is_skew(cert.q)) return false;
  if (la::rank(cert.q, kExact) != n) return false;

  const std::size_t ka = m.A.rank(), kc = m.C.rank();
  if (ka != kc) return false;
  // q alpha = g beta^T
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < ka; ++j) {
      TermMap acc;
      for (std::size_t k = 0; k < n; ++k)
        accumulate(acc, m.alpha.ent[k][j], cert.q.get(i, k));
      accumulate(acc, m.beta.ent[j][i], -cert.g);
      if (!acc.empty()) return false;
    }
  // h beta = alpha^T q
  for (std::size_t i = 0; i < kc; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      TermMap acc;
      for (std::size_t k = 0; k < n; ++k)
        accumulate(acc, m.alpha.ent[k][i], cert.q.get(k, j));
      accumulate(acc, m.beta.ent[i][j], -cert.h);
      if (!acc.empty()) return false;
    }
  return true;
}

std::optional<SymplecticCert> solve_symplectic(const Monad& m, uint64_t seed) {
  if (!(m.A == m.C.negated()))
    throw ShapeError("solve_symplectic needs A = C^v in matching order");
  const std::size_t n = m.B.rank();
  const std::size_t k = m.A.rank();

  // unknowns: q_ij for i < j with b_j = -b_i, then g
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.B.twists[j] == -m.B.twists[i]) unknowns.emplace_back(i, j);
  const std::size_t nu = unknowns.size();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
  for (std::size_t t = 0; t < nu; ++t) slot[unknowns[t]] = t;

  // equations: coefficients of q alpha - g beta^T = 0
  struct Eq {
    std::map<std::size_t, Rat> coef;
  };
  std::map<std::tuple<std::size_t, std::size_t, Monomial>, Eq,
           std::less<std::tuple<std::size_t, std::size_t, Monomial>>>* dummy = nullptr;
  (void)dummy;
  std::vector<Eq> eqs;
  std::map<std::tuple<std::size_t, std::size_t, std::string>, std::size_t> eq_of;
  auto eq_index = [&](std::size_t i, std::size_t j, const Monomial& mo) {
    auto key = std::make_tuple(i, j, ring::to_string(mo));
    auto it = eq_of.find(key);
    if (it != eq_of.end()) return it->second;
    eq_of.emplace(key, eqs.size());
    eqs.push_back({});
    return eqs.size() - 1;
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t t = 0; t < n; ++t) {
        if (t == i) continue;
        auto key = std::minmax(i, t);
        auto sit = slot.find({key.first, key.second});
        if (sit == slot.end()) continue;
        const Rat sign = (i < t) ? 1 : -1;  // q_it in terms of the unknown
        for (const auto& [mo, c] : m.alpha.ent[t][j].terms())
          eqs[eq_index(i, j, mo)].coef[sit->second] += sign * c;
      }
      for (const auto& [mo, c] : m.beta.ent[j][i].terms())
        eqs[eq_index(i, j, mo)].coef[nu] -= c;
    }

  RationalMatrix sys(eqs.size(), nu + 1);
  for (std::size_t r = 0; r < eqs.size(); ++r)
    for (const auto& [c, v] : eqs[r].coef)
      if (v != 0) sys.add_entry(r, c, v);
  RationalMatrix ker = kernel_basis(sys);
  if (ker.cols() == 0) return std::nullopt;

  auto build_cert = [&](const std::vector<Rat>& combo) -> std::optional<SymplecticCert> {
    SymplecticCert cert;
    cert.q = RationalMatrix(n, n);
    Rat g(0);
    for (std::size_t t = 0; t < nu; ++t) {
      Rat v(0);
      for (std::size_t c = 0; c < ker.cols(); ++c) v += combo[c] * ker.get(t, c);
      if (v != 0) {
        cert.q.add_entry(unknowns[t].first, unknowns[t].second, v);
        cert.q.add_entry(unknowns[t].second, unknowns[t].first, -v);
      }
    }
    for (std::size_t c = 0; c < ker.cols(); ++c) g += combo[c] * ker.get(nu, c);
    if (g == 0) return std::nullopt;
    cert.g = g;
    cert.h = -g;
    if (!verify_symplectic(m, cert)) return std::nullopt;
    return cert;
  };

  // single basis vectors first, then seeded random combinations
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    std::vector<Rat> combo(ker.cols(), Rat(0));
    combo[c] = 1;
    if (auto cert = build_cert(combo)) return cert;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rat> combo(ker.cols());
    bool nonzero = false;
    for (auto& c : combo) {
      int v = dist(rng);
      c = v;
      if (v != 0) nonzero = true;
    }
    if (!nonzero) continue;
    if (auto cert = build_cert(combo)) return cert;
  }
  return std::nullopt;
}

namespace {

void require_rank4_shape(const Monad& inst) {
  const std::size_t k = inst.A.rank();
  if (k == 0 || inst.C.rank() != k || inst.B.rank() != 4 + 2 * k)
    throw ShapeError("expected k O(-1) -> (4+2k) O -> k O(1)");
  for (int t : inst.A.twists)
    if (t != -1) throw ShapeError("A must be k O(-1)");
  for (int t : inst.B.twists)
    if (t != 0) throw ShapeError("B must be trivial");
  for (int t : inst.C.twists)
    if (t != 1) throw ShapeError("C must be k O(1)");
}

}  // namespace

Monad build_modified_monad(const Monad& inst, const SymplecticCert& cert,
                           const std::vector<HomogPoly>& s, int a,
                           cx::ValidationReport* report) {
  require_rank4_shape(inst);
  if (a < 2) throw ShapeError("twist a must be at least 2");
  const std::size_t k = inst.A.rank();
  const std::size_t n = inst.B.rank();
  if (s.size() != n) throw ShapeError("section must have one entry per B summand");
  for (const auto& p : s)
    if (!p.is_zero() && p.degree() != a)
      throw ShapeError("section entries must have degree a");
  if (!verify_symplectic(inst, cert))
    throw CertInvalid("certificate fails the symplectic identities");

  for (std::size_t i = 0; i < k; ++i) {
    TermMap acc;
    for (std::size_t j = 0; j < n; ++j) accumulate(acc, s[j] * inst.beta.ent[i][j], 1);
    if (!acc.empty())
      throw SectionNotInKernel("beta s != 0 in row " + std::to_string(i));
  }

  Monad out;
  out.A = LineBundleSum{-a}.concat(inst.A);
  out.B = inst.B;
  out.C = inst.C.concat(LineBundleSum{a});
  out.alpha = GradedMatrix(out.A, out.B);
  for (std::size_t i = 0; i < n; ++i) {
    out.alpha.set(i, 0, s[i]);
    for (std::size_t j = 0; j < k; ++j) out.alpha.set(i, j + 1, inst.alpha.ent[i][j]);
  }
  out.beta = GradedMatrix(out.B, out.C);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) out.beta.set(i, j, inst.beta.ent[i][j]);
  for (std::size_t j = 0; j < n; ++j) {
    HomogPoly acc(a);
    for (std::size_t i = 0; i < n; ++i) {
      Rat qij = cert.q.get(i, j);
      if (qij == 0 || s[i].is_zero()) continue;
      for (const auto& [mo, c] : s[i].terms()) acc.add_term(mo, c * qij);
    }
    out.beta.set(k, j, std::move(acc));
  }

  if (!out.beta.compose(out.alpha).is_zero())
    throw CertInvalid("beta o alpha != 0 for the assembled monad");
  if (report) *report = cx::validate_monad(out, cx::Level::fiberwise);
  return out;
}

Monad extract_rank4(const Monad& m) {
  const std::size_t ka = m.A.rank(), kc = m.C.rank();
  if (ka < 2 || ka != kc) throw ShapeError("not a modified-monad shape");
  const std::size_t k = ka - 1;
  const int a = -m.A.twists[0];
  if (a < 2 || m.C.twists[k] != a) throw ShapeError("twist pattern mismatch");
  for (std::size_t j = 1; j <= k; ++j)
    if (m.A.twists[j] != -1 || m.C.twists[j - 1] != 1)
      throw ShapeError("twist pattern mismatch");
  for (int t : m.B.twists)
    if (t != 0) throw ShapeError("middle term must be trivial");

  Monad out;
  out.A = LineBundleSum::repeated(-1, k);
  out.B = m.B;
  out.C = LineBundleSum::repeated(1, k);
  out.alpha = GradedMatrix(out.A, out.B);
  for (std::size_t i = 0; i < m.B.rank(); ++i)
    for (std::size_t j = 0; j < k; ++j) out.alpha.set(i, j, m.alpha.ent[i][j + 1]);
  out.beta = GradedMatrix(out.B, out.C);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m.B.rank(); ++j) out.beta.set(i, j, m.beta.ent[i][j]);
  auto rep = cx::validate_monad(out, cx::Level::fiberwise);
  if (!rep.all_ok())
    throw ValidationFailed("extracted monad fails validation:\n" + rep.summary());
  return out;
}

Monad make_instanton(int k) {
  if (k < 1 || k > 5) throw ShapeError("charge must be in [1, 5]");
  const std::size_t uk = static_cast<std::size_t>(k);
  Monad m;
  m.A = LineBundleSum::repeated(-1, uk);
  m.B = LineBundleSum::repeated(0, 2 * uk + 2);
  m.C = LineBundleSum::repeated(1, uk);
  m.alpha = GradedMatrix(m.A, m.B);
  // stacked lower-bidiagonal blocks in (x, y) and (z, w)
  for (std::size_t j = 0; j < uk; ++j) {
    m.alpha.set(j, j, HomogPoly::variable(0));
    m.alpha.set(j + 1, j, HomogPoly::variable(1));
    m.alpha.set(uk + 1 + j, j, HomogPoly::variable(2));
    m.alpha.set(uk + 2 + j, j, HomogPoly::variable(3));
  }
  m.beta = GradedMatrix(m.B, m.C);
  // beta = alpha^T q for the symplectic form q = [[0, U], [-U, 0]] with U the
  // antidiagonal unit, so the monad is self-dual by construction
  for (std::size_t i = 0; i < uk; ++i) {
    m.beta.set(i, uk - i, -HomogPoly::variable(2));
    m.beta.set(i, uk - i - 1, -HomogPoly::variable(3));
    m.beta.set(i, 2 * uk + 1 - i, HomogPoly::variable(0));
    m.beta.set(i, 2 * uk - i, HomogPoly::variable(1));
  }
  auto rep = cx::validate_monad(m, cx::Level::fiberwise);
  if (!rep.all_ok())
    throw ValidationFailed("instanton default fails validation:\n" + rep.summary());
  return m;
}

Monad make_instanton(int k, const bundle::GradedMatrix& alpha,
                     const bundle::GradedMatrix& beta) {
  Monad m;
  m.A = alpha.src;
  m.B = alpha.dst;
  m.C = beta.dst;
  m.alpha = alpha;
  m.beta = beta;
  const std::size_t uk = static_cast<std::size_t>(k);
  if (m.A.rank() != uk || m.C.rank() != uk || !(beta.src == alpha.dst))
    throw ValidationFailed("instanton maps have the wrong shape");
  try {
    auto rep = cx::validate_monad(m, cx::Level::fiberwise);
    if (!rep.all_ok())
      throw ValidationFailed("instanton params fail validation:\n" + rep.summary());
  } catch (const std::invalid_argument& e) {
    throw ValidationFailed(e.what());
  }
  return m;
}

Monad widen_with_trivial(const Monad& m, std::size_t extra) {
  Monad out;
  out.A = m.A;
  out.B = m.B.concat(LineBundleSum::repeated(0, extra));
  out.C = m.C;
  out.alpha = GradedMatrix(out.A, out.B);
  for (std::size_t i = 0; i < m.B.rank(); ++i)
    for (std::size_t j = 0; j < m.A.rank(); ++j) out.alpha.set(i, j, m.alpha.ent[i][j]);
  out.beta = GradedMatrix(out.B, out.C);
  for (std::size_t i = 0; i < m.C.rank(); ++i)
    for (std::size_t j = 0; j < m.B.rank(); ++j) out.beta.set(i, j, m.beta.ent[i][j]);
  return out;
}

Monad make_ein() {
  return make_ein({ring::parse_poly("x^5"), ring::parse_poly("y^3"),
                   ring::parse_poly("z^3"), ring::parse_poly("w")});
}

Monad make_ein(const std::array<HomogPoly, 4>& b) {
  Monad m;
  m.A = LineBundleSum{-3};
  m.B = LineBundleSum{-2, 0, 0, 2};
  m.C = LineBundleSum{3};
  m.beta = GradedMatrix(m.B, m.C);
  const int degs[4] = {5, 3, 3, 1};
  for (int j = 0; j < 4; ++j) {
    if (b[j].is_zero() || b[j].degree() != degs[j])
      throw ValidationFailed("beta entry " + std::to_string(j) +
                             " must be nonzero of degree " + std::to_string(degs[j]));
    m.beta.set(0, j, b[j]);
  }
  m.alpha = GradedMatrix(m.A, m.B);
  m.alpha.set(0, 0, b[3]);
  m.alpha.set(1, 0, b[2]);
  m.alpha.set(2, 0, -b[1]);
  m.alpha.set(3, 0, -b[0]);
  auto rep = cx::validate_monad(m, cx::Level::fiberwise);
  if (!rep.all_ok())
    throw ValidationFailed("ein monad fails validation:\n" + rep.summary());
  return m;
}

ModifiedSearch make_modified_instanton(int a, int k, uint64_t seed) {
  ModifiedSearch out;
  out.instanton = widen_with_trivial(make_instanton(k));
  auto cert = solve_symplectic(out.instanton, seed);
  if (!cert)
    throw CertInvalid("no symplectic certificate found for the instanton monad");
  out.cert = *cert;

  RationalMatrix kern = kernel_basis(bundle::h0_matrix(out.instanton.beta, a));
  const std::size_t n = out.instanton.B.rank();
  const std::size_t per = static_cast<std::size_t>(ring::graded_dim(a));
  const auto& basis = ring::monomial_basis(a);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rat> combo(kern.cols());
    bool nonzero = false;
    for (auto& c : combo) {
      int v = dist(rng);
      c = v;
      if (v != 0) nonzero = true;
    }
    if (!nonzero) continue;
    std::vector<HomogPoly> s(n, HomogPoly(a));
    for (const auto& e : kern.entries()) {
      if (combo[e.c] == 0) continue;
      s[e.r / per].add_term(basis[e.r % per], e.v * combo[e.c]);
    }
    Monad cand;
    try {
      cand = build_modified_monad(out.instanton, out.cert, s, a, &out.report);
    } catch (const SectionNotInKernel&) {
      continue;
    }
    out.tries = trial + 1;
    if (out.report.all_ok()) {
      out.monad = std::move(cand);
      out.section = std::move(s);
      return out;
    }
  }
  throw ValidationFailed("no fiberwise-valid section found in 200 tries");
}

}  // namespace p3m::fam
