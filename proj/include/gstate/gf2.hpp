#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gstate::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

// Guards accidental blowup in subset/orbit enumeration paths.
inline constexpr std::size_t kMaxRows = 4096;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Packed bit vector over GF(2).
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t bits) : bits_(bits), w_(words_for(bits), 0) {}

  std::size_t size() const { return bits_; }

  bool get(std::size_t i) const {
    return (w_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  void set(std::size_t i, bool v) {
    Word mask = Word{1} << (i % kWordBits);
    if (v)
      w_[i / kWordBits] |= mask;
    else
      w_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) { w_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }

  /// Parity of the AND with another vector (the GF(2) inner product).
  bool dot(const BitVec& o) const;

  std::size_t popcount() const;
  bool any() const;

  /// Bitwise OR popcount with another vector; used for Pauli weights.
  std::size_t popcount_or(const BitVec& o) const;

  bool operator==(const BitVec&) const = default;

  std::span<const Word> words() const { return w_; }
  std::span<Word> words() { return w_; }

 private:
  std::size_t bits_ = 0;
  std::vector<Word> w_;
};

/// Row-major bit matrix over GF(2); bits beyond `cols` in each row stay zero.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * wpr_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    Word mask = Word{1} << (c % kWordBits);
    if (v)
      data_[r * wpr_ + c / kWordBits] |= mask;
    else
      data_[r * wpr_ + c / kWordBits] &= ~mask;
  }

  std::span<const Word> row(std::size_t r) const {
    return {data_.data() + r * wpr_, wpr_};
  }
  std::span<Word> row(std::size_t r) { return {data_.data() + r * wpr_, wpr_}; }

  /// row(dst) ^= row(src)
  void xor_rows(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  BitVec row_vec(std::size_t r) const;
  void set_row(std::size_t r, const BitVec& v);

  bool row_empty(std::size_t r) const;

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<Word> data_;
};

BitMatrix transpose(const BitMatrix& m);

/// Rank over GF(2). The input is taken by value: elimination runs on the copy.
std::size_t rank2(BitMatrix m);

struct RowReduceResult {
  BitMatrix reduced;                 // reduced row-echelon form
  std::vector<std::size_t> pivots;   // pivot column per nonzero row
};

RowReduceResult row_reduce(const BitMatrix& m);

/// In-place variant for hot loops; returns the pivot columns.
std::vector<std::size_t> row_reduce_in_place(BitMatrix& m);

/// Basis of {v : Mv = 0}; one row per basis vector, cols(M) columns,
/// rows(result) = cols(M) - rank2(M).
BitMatrix nullspace2(const BitMatrix& m);

/// True iff v is a GF(2) combination of the basis rows.
/// The basis rows are assumed independent (checked in debug builds).
bool in_span(const BitMatrix& basis, const BitVec& v);

}  // namespace gstate::gf2
