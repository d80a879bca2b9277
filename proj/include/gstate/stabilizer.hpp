#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gstate/graph.hpp"
#include "gstate/pauli.hpp"

namespace gstate {

/// n independent, pairwise commuting, Hermitian +/-1 generators.
struct StabilizerGroup {
  std::size_t n = 0;
  std::vector<PauliOperator> generators;

  /// Builds after checking commutation, Hermiticity and independence.
  static StabilizerGroup from_generators(std::vector<PauliOperator> gens);
};

/// Generator a: X at a, Z at each neighbor, sign +1.
StabilizerGroup graph_stabilizer(const Graph& g);

/// All stabilizer elements acting trivially outside A (identity included),
/// sorted by symplectic order. Signs come from exact generator products.
std::vector<PauliOperator> elements_supported_in(
    const StabilizerGroup& s, const std::vector<std::size_t>& a);

/// Minimal weight of a nonidentity stabilizer element, located through
/// cut-rank deficiencies: the smallest |A| with |A| > rank2 of the cut
/// submatrix. Requires a connected graph on n >= 3 vertices.
std::size_t delta_via_rank(const Graph& g);

struct DeltaWitness {
  std::size_t delta = 0;
  PauliOperator witness;  // a minimum-weight nonidentity element
};
DeltaWitness delta_with_witness(const Graph& g);

/// Oracle-role walk over all 2^n - 1 nonidentity elements (n <= 20).
std::size_t delta_via_bruteforce(const Graph& g);

struct LowWeightSubgroupReport {
  std::size_t d = 0;
  std::size_t s = 0;  // log2 of the subgroup size
  std::vector<PauliOperator> basis;
  bool complete = false;  // subgroup equals the full stabilizer
};

/// Subgroup generated by all elements of weight <= d. Elements are
/// enumerated per support subset; the basis greedily keeps the
/// symplectically smallest independent ones.
LowWeightSubgroupReport low_weight_subgroup(const StabilizerGroup& s,
                                            std::size_t d);

/// Minimal d whose weight-limited subgroup is the full stabilizer.
/// Requires a connected graph on n >= 3 vertices.
std::size_t eta(const Graph& g);

/// 2^{n-s} with s from low_weight_subgroup; requires d below eta.
std::uint64_t degeneracy_lower_bound(const Graph& g, std::size_t d);

/// Stabilizer generated by the weight-<=d subgroup basis plus the remaining
/// generators with signs flipped by gamma (one bit per complement
/// generator). gamma.size() must equal n - s.
StabilizerGroup sign_flipped_family(const StabilizerGroup& s, std::size_t d,
                                    const std::vector<bool>& gamma);

/// n independent generators, smallest weights first; every generator has
/// weight <= eta(g).
std::vector<PauliOperator> minimal_weight_generating_set(const Graph& g);

namespace detail {

/// Generator-combination masks (rows, one per independent combination)
/// whose products act trivially outside A.
gf2::BitMatrix supported_combos(const StabilizerGroup& s,
                                const std::vector<std::size_t>& a);

PauliOperator product_for_mask(const StabilizerGroup& s,
                               const gf2::BitVec& mask);

/// Every nonidentity element of weight <= d, deduplicated and in symplectic
/// order. Exact signs from generator products.
std::vector<PauliOperator> weight_limited_elements(const StabilizerGroup& s,
                                                   std::size_t d);

/// Visits every k-subset of {0..n-1} in ascending lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(const_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

}  // namespace gstate
