#include "p3m/bundle.hpp"

namespace p3m::bundle {

using ring::graded_dim;
using ring::HomogPoly;

long long bott_h(int d, int i) {
  if (i == 0) return graded_dim(d);
  if (i == 3) return graded_dim(-d - 4);
  return 0;
}

LineBundleSum LineBundleSum::repeated(int twist, std::size_t count) {
  LineBundleSum s;
  s.twists.assign(count, twist);
  return s;
}

long long LineBundleSum::h(int l, int i) const {
  long long total = 0;
  for (int t : twists) total += bott_h(t + l, i);
  return total;
}

LineBundleSum LineBundleSum::negated() const {
  LineBundleSum s;
  s.twists.reserve(twists.size());
  for (int t : twists) s.twists.push_back(-t);
  return s;
}

LineBundleSum LineBundleSum::concat(const LineBundleSum& o) const {
  LineBundleSum s = *this;
  s.twists.insert(s.twists.end(), o.twists.begin(), o.twists.end());
  return s;
}

GradedMatrix::GradedMatrix(LineBundleSum s, LineBundleSum d)
    : src(std::move(s)), dst(std::move(d)) {
  ent.resize(dst.rank());
  for (std::size_t i = 0; i < dst.rank(); ++i) {
    ent[i].reserve(src.rank());
    for (std::size_t j = 0; j < src.rank(); ++j)
      ent[i].emplace_back(dst.twists[i] - src.twists[j]);
  }
}

void GradedMatrix::set(std::size_t i, std::size_t j, ring::HomogPoly p) {
  const int want = dst.twists[i] - src.twists[j];
  if (!p.is_zero() && p.degree() != want)
    throw ring::DegreeMismatch("entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ") must have degree " +
                               std::to_string(want) + ", got " +
                               std::to_string(p.degree()));
  if (p.is_zero())
    ent[i][j] = HomogPoly(want);
  else
    ent[i][j] = std::move(p);
}

bool GradedMatrix::is_zero() const {
  for (const auto& row : ent)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

GradedMatrix GradedMatrix::dual() const {
  GradedMatrix d(dst.negated(), src.negated());
  for (std::size_t i = 0; i < dst.rank(); ++i)
    for (std::size_t j = 0; j < src.rank(); ++j) d.ent[j][i] = ent[i][j];
  return d;
}

GradedMatrix GradedMatrix::compose(const GradedMatrix& other) const {
  if (!(other.dst == src)) throw std::invalid_argument("compose: shape mismatch");
  GradedMatrix out(other.src, dst);
  for (std::size_t i = 0; i < dst.rank(); ++i)
    for (std::size_t j = 0; j < other.src.rank(); ++j) {
      HomogPoly acc(dst.twists[i] - other.src.twists[j]);
      for (std::size_t k = 0; k < src.rank(); ++k) {
        HomogPoly prod = ent[i][k] * other.ent[k][j];
        for (const auto& [m, c] : prod.terms()) acc.add_term(m, c);
      }
      out.ent[i][j] = std::move(acc);
    }
  return out;
}

bool GradedMatrix::operator==(const GradedMatrix& o) const {
  if (!(src == o.src) || !(dst == o.dst)) return false;
  for (std::size_t i = 0; i < dst.rank(); ++i)
    for (std::size_t j = 0; j < src.rank(); ++j)
      if (!(ent[i][j] == o.ent[i][j])) return false;
  return true;
}

la::RationalMatrix h0_matrix(const GradedMatrix& m, int l) {
  std::vector<std::size_t> row_off(m.dst.rank() + 1, 0);
  for (std::size_t i = 0; i < m.dst.rank(); ++i)
    row_off[i + 1] = row_off[i] + static_cast<std::size_t>(graded_dim(m.dst.twists[i] + l));
  std::vector<std::size_t> col_off(m.src.rank() + 1, 0);
  for (std::size_t j = 0; j < m.src.rank(); ++j)
    col_off[j + 1] = col_off[j] + static_cast<std::size_t>(graded_dim(m.src.twists[j] + l));

  la::RationalMatrix out(row_off.back(), col_off.back());
  for (std::size_t i = 0; i < m.dst.rank(); ++i)
    for (std::size_t j = 0; j < m.src.rank(); ++j) {
      if (m.ent[i][j].is_zero()) continue;
      la::RationalMatrix block = ring::mult_matrix(m.ent[i][j], m.src.twists[j] + l);
      for (const auto& e : block.entries())
        out.add_entry(row_off[i] + e.r, col_off[j] + e.c, e.v);
    }
  return out;
}

la::RationalMatrix h3_matrix(const GradedMatrix& m, int l) {
  return h0_matrix(m.dual(), -l - 4).transpose();
}

}  // namespace p3m::bundle
