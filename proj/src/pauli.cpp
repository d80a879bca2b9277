#include "gstate/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace gstate {

namespace {

constexpr std::complex<double> kPhases[4] = {
    {1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliOperator PauliOperator::single(std::size_t n, std::size_t qubit,
                                    char letter) {
  if (qubit >= n) throw std::out_of_range("PauliOperator: qubit out of range");
  PauliOperator p(n);
  switch (letter) {
    case 'X':
      p.x_.set(qubit, true);
      break;
    case 'Z':
      p.z_.set(qubit, true);
      break;
    case 'Y':
      p.x_.set(qubit, true);
      p.z_.set(qubit, true);
      p.phase_ = 1;  // Y = i X Z
      break;
    case 'I':
      break;
    default:
      throw std::invalid_argument("PauliOperator: unknown letter");
  }
  return p;
}

PauliOperator PauliOperator::from_masks(gf2::BitVec x, gf2::BitVec z,
                                        int phase_exp) {
  if (x.size() != z.size())
    throw std::invalid_argument("PauliOperator: mask length mismatch");
  PauliOperator p(x.size());
  p.x_ = std::move(x);
  p.z_ = std::move(z);
  p.phase_ = static_cast<std::uint8_t>(((phase_exp % 4) + 4) % 4);
  return p;
}

PauliOperator PauliOperator::from_string(const std::string& text) {
  std::size_t start = 0;
  int sign = 1;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    sign = text[0] == '-' ? -1 : 1;
    start = 1;
  }
  std::size_t n = text.size() - start;
  PauliOperator p(n);
  int y_count = 0;
  for (std::size_t q = 0; q < n; ++q) {
    char c = text[start + q];
    switch (c) {
      case 'I':
        break;
      case 'X':
        p.x_.set(q, true);
        break;
      case 'Z':
        p.z_.set(q, true);
        break;
      case 'Y':
        p.x_.set(q, true);
        p.z_.set(q, true);
        ++y_count;
        break;
      default:
        throw std::invalid_argument("PauliOperator: unknown letter in string");
    }
  }
  p.phase_ = static_cast<std::uint8_t>((y_count + (sign < 0 ? 2 : 0)) % 4);
  return p;
}

bool PauliOperator::hermitian() const {
  // adjoint = i^{-p} Z^z X^x = i^{-p} (-1)^{|x&z|} X^x Z^z; self-adjoint
  // iff p and |x&z| have equal parity.
  std::size_t overlap = 0;
  auto xw = x_.words();
  auto zw = z_.words();
  for (std::size_t k = 0; k < xw.size(); ++k)
    overlap += std::popcount(xw[k] & zw[k]);
  return ((phase_ ^ overlap) & 1u) == 0;
}

int PauliOperator::sign() const {
  std::size_t overlap = 0;
  auto xw = x_.words();
  auto zw = z_.words();
  for (std::size_t k = 0; k < xw.size(); ++k)
    overlap += std::popcount(xw[k] & zw[k]);
  int diff = (static_cast<int>(phase_) - static_cast<int>(overlap % 4) + 4) % 4;
  if (diff == 0) return 1;
  if (diff == 2) return -1;
  throw std::logic_error("PauliOperator::sign: operator is not Hermitian");
}

PauliOperator PauliOperator::unsigned_form() const {
  PauliOperator p = *this;
  p.phase_ = static_cast<std::uint8_t>((phase_ + (sign() < 0 ? 2 : 0)) % 4);
  return p;
}

bool PauliOperator::symplectic_less(const PauliOperator& a,
                                    const PauliOperator& b) {
  auto cmp_bits = [](const gf2::BitVec& u, const gf2::BitVec& v) -> int {
    auto uw = u.words();
    auto vw = v.words();
    for (std::size_t k = 0; k < uw.size(); ++k) {
      gf2::Word diff = uw[k] ^ vw[k];
      if (diff) {
        gf2::Word lowest = diff & (~diff + 1);
        return (vw[k] & lowest) ? -1 : 1;  // 0 bit first => smaller
      }
    }
    return 0;
  };
  int cx = cmp_bits(a.x_, b.x_);
  if (cx != 0) return cx < 0;
  return cmp_bits(a.z_, b.z_) < 0;
}

std::string PauliOperator::str() const {
  std::string out;
  int p = phase_;
  std::string body;
  body.reserve(n_);
  for (std::size_t q = 0; q < n_; ++q) {
    bool x = x_.get(q), z = z_.get(q);
    if (x && z) {
      body += 'Y';
      p = (p + 3) % 4;  // strip the i carried by each Y
    } else {
      body += x ? 'X' : (z ? 'Z' : 'I');
    }
  }
  switch (p) {
    case 0: out = "+"; break;
    case 1: out = "+i"; break;
    case 2: out = "-"; break;
    case 3: out = "-i"; break;
  }
  return out + body;
}

std::vector<std::complex<double>> PauliOperator::apply(
    const std::vector<std::complex<double>>& v) const {
  if (n_ > 30) throw std::invalid_argument("PauliOperator::apply: n too large");
  const std::size_t dim = std::size_t{1} << n_;
  if (v.size() != dim)
    throw std::invalid_argument("PauliOperator::apply: dimension mismatch");
  const gf2::Word xm = n_ ? x_.words()[0] : 0;
  const gf2::Word zm = n_ ? z_.words()[0] : 0;
  const std::complex<double> global = kPhases[phase_];
  std::vector<std::complex<double>> out(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double sz = (std::popcount(zm & idx) & 1u) ? -1.0 : 1.0;
    out[idx ^ xm] = global * sz * v[idx];
  }
  return out;
}

PauliOperator multiply(const PauliOperator& g, const PauliOperator& h) {
  if (g.n_ != h.n_)
    throw std::invalid_argument("multiply: qubit count mismatch");
  PauliOperator out(g.n_);
  // (X^a Z^b)(X^c Z^d) = (-1)^{b.c} X^{a^c} Z^{b^d}
  std::size_t cross = 0;
  auto bz = g.z_.words();
  auto cx = h.x_.words();
  for (std::size_t k = 0; k < bz.size(); ++k)
    cross += std::popcount(bz[k] & cx[k]);
  out.x_ = g.x_;
  out.x_ ^= h.x_;
  out.z_ = g.z_;
  out.z_ ^= h.z_;
  out.phase_ =
      static_cast<std::uint8_t>((g.phase_ + h.phase_ + 2 * (cross & 1u)) % 4);
  return out;
}

bool commutes(const PauliOperator& g, const PauliOperator& h) {
  if (g.qubits() != h.qubits())
    throw std::invalid_argument("commutes: qubit count mismatch");
  return !(g.x_bits().dot(h.z_bits()) ^ h.x_bits().dot(g.z_bits()));
}

}  // namespace gstate
