#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "gstate/gf2.hpp"

namespace gstate {

/// n-qubit Pauli operator in symplectic form:
///   op = i^phase_exp * prod_a X_a^{x[a]} Z_a^{z[a]}.
/// Qubit 0 is the lowest-order bit of basis-state indices and the leftmost
/// letter in text renderings.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(std::size_t n) : n_(n), x_(n), z_(n) {}

  static PauliOperator identity(std::size_t n) { return PauliOperator(n); }
  /// Single-qubit X/Y/Z embedded at `qubit` (Hermitian, sign +1).
  static PauliOperator single(std::size_t n, std::size_t qubit, char letter);
  static PauliOperator from_masks(gf2::BitVec x, gf2::BitVec z, int phase_exp);
  /// Parse e.g. "+XZI", "-IYY" (optional sign, qubit 0 leftmost).
  static PauliOperator from_string(const std::string& text);

  std::size_t qubits() const { return n_; }
  const gf2::BitVec& x_bits() const { return x_; }
  const gf2::BitVec& z_bits() const { return z_; }
  int phase_exp() const { return phase_; }

  std::size_t weight() const { return x_.popcount_or(z_); }
  bool is_identity() const { return !x_.any() && !z_.any(); }
  bool hermitian() const;

  /// +1 or -1 relative to the standard Pauli string (I/X/Y/Z letters with no
  /// extra factor). Throws for non-Hermitian operators.
  int sign() const;

  /// Same operator with sign forced to +1; Hermitian input required.
  PauliOperator unsigned_form() const;

  bool operator==(const PauliOperator&) const = default;

  /// Lexicographic order on the (x|z) symplectic bit string, phase ignored.
  static bool symplectic_less(const PauliOperator& a, const PauliOperator& b);
  static bool same_masks(const PauliOperator& a, const PauliOperator& b) {
    return a.x_ == b.x_ && a.z_ == b.z_;
  }

  std::string str() const;

  /// Exact action on a dense state vector of 2^n amplitudes.
  std::vector<std::complex<double>> apply(
      const std::vector<std::complex<double>>& v) const;

  friend PauliOperator multiply(const PauliOperator& g, const PauliOperator& h);
  friend bool commutes(const PauliOperator& g, const PauliOperator& h);

 private:
  std::size_t n_ = 0;
  gf2::BitVec x_, z_;
  std::uint8_t phase_ = 0;  // power of i, mod 4
};

PauliOperator multiply(const PauliOperator& g, const PauliOperator& h);
bool commutes(const PauliOperator& g, const PauliOperator& h);

}  // namespace gstate
