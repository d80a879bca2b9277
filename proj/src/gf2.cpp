#include "gstate/gf2.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace gstate::gf2 {

bool BitVec::dot(const BitVec& o) const {
  Word acc = 0;
  for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
  return std::popcount(acc) & 1u;
}

std::size_t BitVec::popcount() const {
  std::size_t n = 0;
  for (Word w : w_) n += std::popcount(w);
  return n;
}

bool BitVec::any() const {
  for (Word w : w_)
    if (w) return true;
  return false;
}

std::size_t BitVec::popcount_or(const BitVec& o) const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < w_.size(); ++k)
    n += std::popcount(w_[k] | o.w_[k]);
  return n;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(words_for(cols)), data_(rows * wpr_, 0) {
  if (rows > kMaxRows)
    throw std::invalid_argument("BitMatrix: row count exceeds limit");
}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
  Word* d = data_.data() + dst * wpr_;
  const Word* s = data_.data() + src * wpr_;
  for (std::size_t k = 0; k < wpr_; ++k) d[k] ^= s[k];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  Word* pa = data_.data() + a * wpr_;
  Word* pb = data_.data() + b * wpr_;
  for (std::size_t k = 0; k < wpr_; ++k) std::swap(pa[k], pb[k]);
}

BitVec BitMatrix::row_vec(std::size_t r) const {
  BitVec v(cols_);
  auto src = row(r);
  auto dst = v.words();
  for (std::size_t k = 0; k < wpr_; ++k) dst[k] = src[k];
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVec& v) {
  assert(v.size() == cols_);
  auto src = v.words();
  auto dst = row(r);
  for (std::size_t k = 0; k < wpr_; ++k) dst[k] = src[k];
}

bool BitMatrix::row_empty(std::size_t r) const {
  for (Word w : row(r))
    if (w) return false;
  return true;
}

BitMatrix transpose(const BitMatrix& m) {
  BitMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) t.set(c, r, true);
  return t;
}

std::vector<std::size_t> row_reduce_in_place(BitMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < m.rows() && !m.get(r, c)) ++r;
    if (r == m.rows()) continue;
    m.swap_rows(pivot_row, r);
    for (std::size_t r2 = 0; r2 < m.rows(); ++r2)
      if (r2 != pivot_row && m.get(r2, c)) m.xor_rows(r2, pivot_row);
    pivots.push_back(c);
    ++pivot_row;
  }
  return pivots;
}

std::size_t rank2(BitMatrix m) { return row_reduce_in_place(m).size(); }

RowReduceResult row_reduce(const BitMatrix& m) {
  RowReduceResult res{m, {}};
  res.pivots = row_reduce_in_place(res.reduced);
  return res;
}

BitMatrix nullspace2(const BitMatrix& m) {
  // Eliminate, then read one kernel vector per free column: the free column
  // gets a 1 and each pivot row with a 1 in that column contributes its
  // pivot position.
  BitMatrix red = m;
  std::vector<std::size_t> pivots = row_reduce_in_place(red);

  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  BitMatrix basis(m.cols() - pivots.size(), m.cols());
  std::size_t out = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    basis.set(out, c, true);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      if (red.get(pr, c)) basis.set(out, pivots[pr], true);
    ++out;
  }
  return basis;
}

bool in_span(const BitMatrix& basis, const BitVec& v) {
  if (v.size() != basis.cols())
    throw std::invalid_argument("in_span: dimension mismatch");
  assert(rank2(basis) == basis.rows());

  // Eliminate v against an echelonized copy of the basis.
  BitMatrix red = basis;
  row_reduce_in_place(red);
  BitVec rem = v;
  for (std::size_t r = 0; r < red.rows(); ++r) {
    if (red.row_empty(r)) continue;
    std::size_t lead = 0;
    while (!red.get(r, lead)) ++lead;
    if (rem.get(lead)) rem ^= red.row_vec(r);
  }
  return !rem.any();
}

}  // namespace gstate::gf2
