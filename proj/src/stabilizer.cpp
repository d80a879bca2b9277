#include "gstate/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "gstate/errors.hpp"

namespace gstate {

namespace {

gf2::BitVec symplectic_vec(const PauliOperator& op) {
  const std::size_t n = op.qubits();
  gf2::BitVec v(2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    if (op.x_bits().get(q)) v.set(q, true);
    if (op.z_bits().get(q)) v.set(n + q, true);
  }
  return v;
}

// Incremental GF(2) row space with echelon rows keyed by lowest set bit.
class Gf2Span {
 public:
  bool insert(gf2::BitVec v) {
    reduce(v);
    if (!v.any()) return false;
    rows_.emplace_back(first_bit(v), std::move(v));
    return true;
  }

  bool contains(gf2::BitVec v) const {
    reduce(v);
    return !v.any();
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  static std::size_t first_bit(const gf2::BitVec& v) {
    auto w = v.words();
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k]) return k * gf2::kWordBits + std::countr_zero(w[k]);
    return v.size();
  }
  void reduce(gf2::BitVec& v) const {
    for (const auto& [pivot, row] : rows_)
      if (v.get(pivot)) v ^= row;
  }

  std::vector<std::pair<std::size_t, gf2::BitVec>> rows_;
};

struct MaskKey {
  std::vector<gf2::Word> words;
  bool operator==(const MaskKey&) const = default;
};

}  // namespace

StabilizerGroup StabilizerGroup::from_generators(
    std::vector<PauliOperator> gens) {
  if (gens.empty())
    throw std::invalid_argument("StabilizerGroup: no generators");
  const std::size_t n = gens[0].qubits();
  if (gens.size() != n)
    throw std::invalid_argument("StabilizerGroup: need exactly n generators");
  Gf2Span span;
  for (const auto& g : gens) {
    if (g.qubits() != n)
      throw std::invalid_argument("StabilizerGroup: qubit count mismatch");
    g.sign();  // throws unless Hermitian with real sign
    if (!span.insert(symplectic_vec(g)))
      throw std::invalid_argument("StabilizerGroup: generators not independent");
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commutes(gens[i], gens[j]))
        throw std::invalid_argument("StabilizerGroup: generators must commute");
  return {n, std::move(gens)};
}

StabilizerGroup graph_stabilizer(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<PauliOperator> gens;
  gens.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    gf2::BitVec x(n), z = g.neighbors(a);
    x.set(a, true);
    gens.push_back(PauliOperator::from_masks(std::move(x), std::move(z), 0));
  }
  return {n, std::move(gens)};
}

namespace detail {

gf2::BitMatrix supported_combos(const StabilizerGroup& s,
                                const std::vector<std::size_t>& a) {
  const std::size_t n = s.n;
  std::vector<bool> in_a(n, false);
  for (std::size_t v : a) {
    if (v >= n)
      throw std::out_of_range("supported_combos: vertex out of range");
    in_a[v] = true;
  }
  std::vector<std::size_t> outside;
  for (std::size_t v = 0; v < n; ++v)
    if (!in_a[v]) outside.push_back(v);

  // One x-constraint and one z-constraint per outside qubit: a combination
  // c satisfies M c = 0 iff its product acts trivially there.
  gf2::BitMatrix constraints(2 * outside.size(), n);
  for (std::size_t j = 0; j < outside.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (s.generators[i].x_bits().get(outside[j]))
        constraints.set(2 * j, i, true);
      if (s.generators[i].z_bits().get(outside[j]))
        constraints.set(2 * j + 1, i, true);
    }
  return gf2::nullspace2(constraints);
}

PauliOperator product_for_mask(const StabilizerGroup& s,
                               const gf2::BitVec& mask) {
  PauliOperator acc = PauliOperator::identity(s.n);
  for (std::size_t i = 0; i < s.n; ++i)
    if (mask.get(i)) acc = multiply(acc, s.generators[i]);
  return acc;
}

}  // namespace detail

std::vector<PauliOperator> elements_supported_in(
    const StabilizerGroup& s, const std::vector<std::size_t>& a) {
  gf2::BitMatrix combos = detail::supported_combos(s, a);
  const std::size_t m = combos.rows();
  if (m > 24)
    throw SizeLimitError("elements_supported_in: 2^" + std::to_string(m) +
                         " supported elements");

  std::vector<PauliOperator> basis_ops;
  basis_ops.reserve(m);
  for (std::size_t r = 0; r < m; ++r)
    basis_ops.push_back(detail::product_for_mask(s, combos.row_vec(r)));

  // Gray-code walk; the factors commute, so accumulation order is free.
  std::vector<PauliOperator> out;
  out.reserve(std::size_t{1} << m);
  PauliOperator cur = PauliOperator::identity(s.n);
  out.push_back(cur);
  for (std::size_t idx = 1; idx < (std::size_t{1} << m); ++idx) {
    cur = multiply(cur, basis_ops[std::countr_zero(idx)]);
    out.push_back(cur);
  }
  std::sort(out.begin(), out.end(), PauliOperator::symplectic_less);
  return out;
}

namespace {

DeltaWitness delta_impl(const Graph& g) {
  if (g.order() < 3)
    throw std::invalid_argument("delta: n >= 3 required");
  if (!g.connected())
    throw std::invalid_argument("delta: graph must be connected");
  const std::size_t n = g.order();
  StabilizerGroup s = graph_stabilizer(g);
  for (std::size_t k = 1; k < n; ++k) {
    DeltaWitness found;
    bool hit = false;
    detail::for_each_subset(n, k, [&](const std::vector<std::size_t>& a) {
      if (hit) return;
      if (gf2::rank2(submatrix_cut(g, a)) < k) {
        auto elems = elements_supported_in(s, a);
        for (const auto& e : elems)
          if (!e.is_identity()) {
            found = {k, e};
            hit = true;
            return;
          }
      }
    });
    if (hit) return found;
  }
  // No proper subset is deficient: the full product is the only candidate.
  gf2::BitVec all(n);
  for (std::size_t i = 0; i < n; ++i) all.set(i, true);
  return {n, detail::product_for_mask(s, all)};
}

}  // namespace

std::size_t delta_via_rank(const Graph& g) { return delta_impl(g).delta; }

DeltaWitness delta_with_witness(const Graph& g) { return delta_impl(g); }

std::size_t delta_via_bruteforce(const Graph& g) {
  const std::size_t n = g.order();
  if (n > 20)
    throw SizeLimitError("delta_via_bruteforce: n <= 20 required");
  if (n == 0) throw std::invalid_argument("delta_via_bruteforce: empty graph");
  StabilizerGroup s = graph_stabilizer(g);
  PauliOperator cur = PauliOperator::identity(n);
  std::size_t best = n + 1;
  for (std::size_t idx = 1; idx < (std::size_t{1} << n); ++idx) {
    cur = multiply(cur, s.generators[std::countr_zero(idx)]);
    best = std::min(best, cur.weight());
  }
  return best;
}

namespace detail {

std::vector<PauliOperator> weight_limited_elements(const StabilizerGroup& s,
                                                   std::size_t d) {
  const std::size_t n = s.n;
  const std::size_t cap = std::min(d, n);

  std::vector<PauliOperator> elements;
  for (std::size_t k = 1; k <= cap; ++k) {
    detail::for_each_subset(n, k, [&](const std::vector<std::size_t>& a) {
      gf2::BitMatrix combos = detail::supported_combos(s, a);
      const std::size_t m = combos.rows();
      if (m == 0) return;
      if (m > 24)
        throw SizeLimitError("weight_limited_elements: subgroup too large");
      std::vector<PauliOperator> basis_ops;
      basis_ops.reserve(m);
      for (std::size_t r = 0; r < m; ++r)
        basis_ops.push_back(detail::product_for_mask(s, combos.row_vec(r)));
      PauliOperator cur = PauliOperator::identity(n);
      for (std::size_t idx = 1; idx < (std::size_t{1} << m); ++idx) {
        cur = multiply(cur, basis_ops[std::countr_zero(idx)]);
        if (!cur.is_identity()) elements.push_back(cur);
      }
    });
  }

  std::sort(elements.begin(), elements.end(), PauliOperator::symplectic_less);
  elements.erase(std::unique(elements.begin(), elements.end(),
                             PauliOperator::same_masks),
                 elements.end());
  return elements;
}

}  // namespace detail

LowWeightSubgroupReport low_weight_subgroup(const StabilizerGroup& s,
                                            std::size_t d) {
  if (d < 1) throw std::invalid_argument("low_weight_subgroup: d >= 1");
  const std::size_t n = s.n;
  std::vector<PauliOperator> elements = detail::weight_limited_elements(s, d);

  LowWeightSubgroupReport report;
  report.d = d;
  Gf2Span span;
  for (const auto& e : elements)
    if (span.insert(symplectic_vec(e))) report.basis.push_back(e);
  report.s = span.rank();
  report.complete = report.s == n;
  return report;
}

std::size_t eta(const Graph& g) {
  const std::size_t n = g.order();
  std::size_t delta = delta_via_rank(g);  // also enforces preconditions
  StabilizerGroup s = graph_stabilizer(g);
  for (std::size_t d = delta; d <= n; ++d)
    if (low_weight_subgroup(s, d).complete) return d;
  throw std::logic_error("eta: stabilizer not generated at d = n");
}

std::uint64_t degeneracy_lower_bound(const Graph& g, std::size_t d) {
  StabilizerGroup s = graph_stabilizer(g);
  LowWeightSubgroupReport report = low_weight_subgroup(s, d);
  if (report.complete)
    throw std::invalid_argument(
        "degeneracy_lower_bound: no degeneracy forced at this locality");
  const std::size_t exponent = g.order() - report.s;
  if (exponent > 63)
    throw SizeLimitError("degeneracy_lower_bound: bound exceeds 2^63");
  return std::uint64_t{1} << exponent;
}

StabilizerGroup sign_flipped_family(const StabilizerGroup& s, std::size_t d,
                                    const std::vector<bool>& gamma) {
  const std::size_t n = s.n;
  LowWeightSubgroupReport report = low_weight_subgroup(s, d);
  if (gamma.size() != n - report.s)
    throw std::invalid_argument("sign_flipped_family: gamma length must be " +
                                std::to_string(n - report.s));

  Gf2Span span;
  std::vector<PauliOperator> gens = report.basis;
  for (const auto& b : gens) span.insert(symplectic_vec(b));

  // Extend with original generators; anything of weight <= d is already in
  // the span, so the complement generators all have weight > d.
  std::size_t j = 0;
  for (const auto& g : s.generators) {
    if (!span.insert(symplectic_vec(g))) continue;
    PauliOperator flipped =
        gamma[j] ? PauliOperator::from_masks(g.x_bits(), g.z_bits(),
                                             g.phase_exp() + 2)
                 : g;
    gens.push_back(flipped);
    ++j;
  }
  return StabilizerGroup::from_generators(std::move(gens));
}

std::vector<PauliOperator> minimal_weight_generating_set(const Graph& g) {
  const std::size_t n = g.order();
  StabilizerGroup s = graph_stabilizer(g);
  std::size_t d = eta(g);
  std::vector<PauliOperator> elements = detail::weight_limited_elements(s, d);
  std::stable_sort(elements.begin(), elements.end(),
                   [](const PauliOperator& a, const PauliOperator& b) {
                     return a.weight() < b.weight();
                   });
  Gf2Span span;
  std::vector<PauliOperator> gens;
  for (const auto& e : elements) {
    if (span.insert(symplectic_vec(e))) gens.push_back(e);
    if (gens.size() == n) break;
  }
  if (gens.size() != n)
    throw std::logic_error("minimal_weight_generating_set: span incomplete");
  return gens;
}

}  // namespace gstate
