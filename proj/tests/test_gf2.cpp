#include <doctest.h>

#include <random>
#include <stdexcept>

#include "gstate/gf2.hpp"

using namespace gstate::gf2;

namespace {

BitMatrix from_rows(const std::vector<std::vector<int>>& rows) {
  BitMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m.set(r, c, rows[r][c] != 0);
  return m;
}

// Mv over GF(2), used to verify nullspace vectors directly.
BitVec mat_vec(const BitMatrix& m, const BitVec& v) {
  BitVec out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out.set(r, m.row_vec(r).dot(v));
  return out;
}

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                        std::size_t cols) {
  BitMatrix m(rows, cols);
  std::bernoulli_distribution bit(0.5);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, bit(rng));
  return m;
}

// The cut matrix of the 6-cycle for A = {1,2,3} (0-based vertices, columns
// 0,4,5).
const std::vector<std::vector<int>> kSixCycleCut = {
    {1, 0, 0}, {0, 0, 0}, {0, 1, 0}};

}  // namespace

TEST_CASE("rank2 on reference matrices") {
  CHECK(rank2(from_rows(kSixCycleCut)) == 2);
  CHECK(rank2(BitMatrix(3, 3)) == 0);
  BitMatrix eye(5, 5);
  for (std::size_t i = 0; i < 5; ++i) eye.set(i, i, true);
  CHECK(rank2(eye) == 5);
}

TEST_CASE("row_reduce reference cases") {
  auto dup = row_reduce(from_rows({{1, 1}, {1, 1}}));
  CHECK(dup.pivots == std::vector<std::size_t>{0});
  CHECK(dup.reduced == from_rows({{1, 1}, {0, 0}}));

  BitMatrix eye(4, 4);
  for (std::size_t i = 0; i < 4; ++i) eye.set(i, i, true);
  auto id = row_reduce(eye);
  CHECK(id.reduced == eye);
  CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2, 3});

  CHECK(row_reduce(from_rows(kSixCycleCut)).pivots.size() == 2);
}

TEST_CASE("nullspace2 reference cases") {
  BitMatrix eye(4, 4);
  for (std::size_t i = 0; i < 4; ++i) eye.set(i, i, true);
  CHECK(nullspace2(eye).rows() == 0);

  CHECK(nullspace2(BitMatrix(2, 3)).rows() == 3);

  BitMatrix cut = from_rows(kSixCycleCut);
  BitMatrix basis = nullspace2(cut);
  REQUIRE(basis.rows() == 1);
  BitVec v = basis.row_vec(0);
  CHECK_FALSE(mat_vec(cut, v).any());
}

TEST_CASE("in_span reference cases") {
  BitMatrix basis = from_rows({{1, 0}, {0, 1}});
  BitVec v(2);
  v.set(0, true);
  v.set(1, true);
  CHECK(in_span(basis, v));

  BitMatrix empty(0, 3);
  CHECK(in_span(empty, BitVec(3)));

  BitMatrix one_row = from_rows({{1, 1, 0}});
  BitVec w(3);
  w.set(1, true);
  w.set(2, true);
  // both combinations of the single row are 000 and 110, neither is 011
  CHECK_FALSE(in_span(one_row, w));
}

TEST_CASE("rank equals transpose rank on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> size(1, 64);
  for (int trial = 0; trial < 60; ++trial) {
    BitMatrix m = random_matrix(rng, size(rng), size(rng));
    CHECK(rank2(m) == rank2(transpose(m)));
  }
}

TEST_CASE("rank plus nullity equals column count") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> size(1, 40);
  for (int trial = 0; trial < 60; ++trial) {
    BitMatrix m = random_matrix(rng, size(rng), size(rng));
    BitMatrix basis = nullspace2(m);
    CHECK(rank2(m) + basis.rows() == m.cols());
    for (std::size_t r = 0; r < basis.rows(); ++r)
      CHECK_FALSE(mat_vec(m, basis.row_vec(r)).any());
  }
}

TEST_CASE("in_span agrees with exhaustive enumeration") {
  std::mt19937_64 rng(13);
  std::bernoulli_distribution bit(0.5);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 1 + trial % 8;
    std::size_t cols = 3 + trial % 9;
    BitMatrix m = random_matrix(rng, rows, cols);
    // in_span requires independent rows
    auto reduced = row_reduce(m);
    BitMatrix basis(reduced.pivots.size(), cols);
    for (std::size_t r = 0; r < reduced.pivots.size(); ++r)
      basis.set_row(r, reduced.reduced.row_vec(r));

    BitVec v(cols);
    for (std::size_t c = 0; c < cols; ++c) v.set(c, bit(rng));

    bool expected = false;
    for (std::size_t combo = 0; combo < (std::size_t{1} << basis.rows());
         ++combo) {
      BitVec acc(cols);
      for (std::size_t r = 0; r < basis.rows(); ++r)
        if ((combo >> r) & 1u) acc ^= basis.row_vec(r);
      if (acc == v) {
        expected = true;
        break;
      }
    }
    CHECK(in_span(basis, v) == expected);
  }
}

TEST_CASE("row limit guard") {
  CHECK_THROWS_AS(BitMatrix(kMaxRows + 1, 2), std::invalid_argument);
}
