#include "p3m/cohomology.hpp"

#include "p3m/bundle.hpp"
#include "p3m/poly.hpp"

namespace p3m::coh {

using bundle::h0_matrix;
using bundle::h3_matrix;
using la::RationalMatrix;
using la::RankConfig;
using la::Subquotient;

namespace {

const RankConfig kExact{RankConfig::Strategy::exact};

}

LadderResult ladder_cohomology(const cx::Monad& m, int l) {
  const RationalMatrix m0 = h0_matrix(m.beta, l);
  const RationalMatrix psi0 = h0_matrix(m.alpha, l);
  const RationalMatrix m3 = h3_matrix(m.beta, l);
  const RationalMatrix psi3 = h3_matrix(m.alpha, l);

  const long long h0A = m.A.h(l, 0);
  const long long h0C = m.C.h(l, 0);

  const std::size_t rank_psi0 = la::rank(psi0, kExact);
  if (static_cast<long long>(rank_psi0) != h0A)
    throw PreconditionError(
        "H^0-level injectivity of alpha fails at twist " + std::to_string(l) +
        "; the input is not a sheaf-injective monad map");

  RationalMatrix ker_m0 = kernel_basis(m0);
  RationalMatrix ker_psi3 = kernel_basis(psi3);
  RationalMatrix ker_m3 = kernel_basis(m3);
  const std::size_t rank_m0 = m0.cols() - ker_m0.cols();
  const std::size_t rank_psi3 = la::rank(psi3, kExact);

  LadderResult out;
  out.h[0] = static_cast<long long>(ker_m0.cols()) - h0A;
  out.h[1] = h0C - static_cast<long long>(rank_m0);
  out.h[2] = static_cast<long long>(ker_psi3.cols());
  out.h[3] = static_cast<long long>(ker_m3.cols()) - static_cast<long long>(rank_psi3);
  for (int i = 0; i < 4; ++i)
    if (out.h[i] < 0)
      throw PreconditionError("negative h^" + std::to_string(i) + " at twist " +
                              std::to_string(l) + "; invalid monad");

  out.pres[0] = {0, l, "H0(B(l))",
                 Subquotient{m0.cols(), ker_m0, psi0}};
  out.pres[1] = {1, l, "H0(C(l))",
                 Subquotient{m0.rows(), RationalMatrix::identity(m0.rows()), m0}};
  out.pres[2] = {2, l, "H3(A(l))",
                 Subquotient{psi3.cols(), ker_psi3, RationalMatrix(psi3.cols(), 0)}};
  out.pres[3] = {3, l, "H3(B(l))", Subquotient{m3.cols(), ker_m3, psi3}};
  return out;
}

std::map<int, std::array<long long, 4>> ladder_table(const cx::Monad& m, int lo,
                                                     int hi) {
  std::map<int, std::array<long long, 4>> t;
  for (int l = lo; l <= hi; ++l) t[l] = ladder_cohomology(m, l).h;
  return t;
}

namespace {

/// Multiplication by the variable v on H^0(C(l-1)) -> H^0(C(l)), block
/// diagonal over the summands of C.
RationalMatrix var_mult_ambient(const bundle::LineBundleSum& c, int v, int l) {
  std::vector<RationalMatrix> blocks;
  std::size_t rows = 0, cols = 0;
  for (int t : c.twists) {
    RationalMatrix b = ring::mult_matrix(ring::HomogPoly::variable(v), t + l - 1);
    rows += b.rows();
    cols += b.cols();
    blocks.push_back(std::move(b));
  }
  RationalMatrix out(rows, cols);
  std::size_t ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (const auto& e : b.entries()) out.add_entry(ro + e.r, co + e.c, e.v);
    ro += b.rows();
    co += b.cols();
  }
  return out;
}

}  // namespace

std::multiset<int> h1_module_generators(const cx::Monad& m, int l_min, int l_max) {
  LadderResult prev = ladder_cohomology(m, l_min);
  if (prev.h[1] != 0)
    throw RangeTooSmall("h^1 does not vanish at the lower end l = " +
                        std::to_string(l_min));
  std::multiset<int> degrees;
  for (int l = l_min + 1; l <= l_max; ++l) {
    LadderResult cur = ladder_cohomology(m, l);
    if (cur.h[1] > 0) {
      long long image_rank = 0;
      if (prev.h[1] > 0) {
        RationalMatrix stacked(static_cast<std::size_t>(cur.h[1]), 0);
        for (int v = 0; v < 4; ++v) {
          RationalMatrix amb = var_mult_ambient(m.C, v, l);
          RationalMatrix ind =
              la::induced_map(amb, prev.pres[1].model, cur.pres[1].model);
          stacked = stacked.hstack(ind);
        }
        image_rank = static_cast<long long>(la::rank(stacked, kExact));
      }
      for (long long k = 0; k < cur.h[1] - image_rank; ++k) degrees.insert(l);
    }
    prev = std::move(cur);
  }
  return degrees;
}

}  // namespace p3m::coh
