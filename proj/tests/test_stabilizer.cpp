#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "gstate/errors.hpp"
#include "gstate/gf2.hpp"
#include "gstate/graph.hpp"
#include "gstate/hamiltonian.hpp"
#include "gstate/stabilizer.hpp"
#include "graph_enum.hpp"

using namespace gstate;

namespace {

// Test-side walk over all 2^n stabilizer elements.
std::vector<PauliOperator> all_elements(const StabilizerGroup& s) {
  std::vector<PauliOperator> out;
  PauliOperator cur = PauliOperator::identity(s.n);
  out.push_back(cur);
  for (std::size_t idx = 1; idx < (std::size_t{1} << s.n); ++idx) {
    cur = multiply(cur, s.generators[std::countr_zero(idx)]);
    out.push_back(cur);
  }
  return out;
}

bool supported_in(const PauliOperator& op, const std::vector<std::size_t>& a) {
  std::vector<bool> allowed(op.qubits(), false);
  for (std::size_t v : a) allowed[v] = true;
  for (std::size_t q = 0; q < op.qubits(); ++q)
    if ((op.x_bits().get(q) || op.z_bits().get(q)) && !allowed[q]) return false;
  return true;
}

std::set<std::string> as_strings(const std::vector<PauliOperator>& ops) {
  std::set<std::string> out;
  for (const auto& op : ops) out.insert(op.str());
  return out;
}

Graph random_graph(std::mt19937_64& rng, std::size_t n, double p = 0.4) {
  std::bernoulli_distribution edge(p);
  Graph g(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (edge(rng)) g.set_edge(a, b, true);
  return g;
}

}  // namespace

TEST_CASE("graph stabilizer generators") {
  auto c5 = graph_stabilizer(cycle_graph(5));
  CHECK(c5.generators[2].str() == "+IZXZI");
  CHECK(c5.generators[0].str() == "+XZIIZ");

  auto k3 = graph_stabilizer(complete_graph(3));
  CHECK(k3.generators[0].str() == "+XZZ");
  CHECK(k3.generators[1].str() == "+ZXZ");
  CHECK(k3.generators[2].str() == "+ZZX");

  auto p3 = graph_stabilizer(path_graph(3));
  CHECK(p3.generators[0].weight() == 2);
  CHECK(p3.generators[0].str() == "+XZI");
}

TEST_CASE("from_generators validates") {
  auto good = graph_stabilizer(cycle_graph(4));
  CHECK_NOTHROW(StabilizerGroup::from_generators(good.generators));

  auto dep = good.generators;
  dep[3] = multiply(dep[0], dep[1]);
  dep[3] = multiply(dep[3], PauliOperator::identity(4));
  // replace with a dependent product of the first two
  dep[3] = multiply(dep[0], dep[1]);
  CHECK_THROWS_AS(StabilizerGroup::from_generators(dep),
                  std::invalid_argument);

  auto anti = good.generators;
  anti[0] = PauliOperator::single(4, 0, 'X');
  anti[1] = PauliOperator::single(4, 0, 'Z');
  CHECK_THROWS_AS(StabilizerGroup::from_generators(anti),
                  std::invalid_argument);
}

TEST_CASE("elements supported in a subset") {
  Graph c6 = cycle_graph(6);
  auto s = graph_stabilizer(c6);

  auto elems = elements_supported_in(s, {1, 2, 3});
  REQUIRE(elems.size() == 2);  // 2^{3 - rank 2}
  CHECK(elems[0].is_identity());
  CHECK(elems[1].weight() == 3);

  auto only_identity = elements_supported_in(s, {});
  REQUIRE(only_identity.size() == 1);
  CHECK(only_identity[0].is_identity());

  Graph p3 = path_graph(3);
  auto sp3 = graph_stabilizer(p3);
  auto elems_p3 = elements_supported_in(sp3, {0, 1});
  auto strings = as_strings(elems_p3);
  CHECK(strings.contains("+XZI"));

  // brute-force cross-check
  std::vector<PauliOperator> expected;
  for (const auto& e : all_elements(sp3))
    if (supported_in(e, {0, 1})) expected.push_back(e);
  CHECK(as_strings(expected) == strings);
}

TEST_CASE("supported-element count matches the cut-rank identity") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> sizes(3, 10);
  int done = 0;
  while (done < 500) {
    std::size_t n = sizes(rng);
    Graph g = random_graph(rng, n);
    std::uniform_int_distribution<std::size_t> asize(1, n - 1);
    std::size_t k = asize(rng);
    std::vector<std::size_t> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    std::shuffle(verts.begin(), verts.end(), rng);
    std::vector<std::size_t> a(verts.begin(), verts.begin() + k);
    std::sort(a.begin(), a.end());

    auto s = graph_stabilizer(g);
    auto elems = elements_supported_in(s, a);
    std::size_t rank = gf2::rank2(submatrix_cut(g, a));
    CHECK(elems.size() == (std::size_t{1} << (k - rank)));
    ++done;
  }
}

TEST_CASE("delta golden values") {
  CHECK(delta_via_rank(cycle_graph(6)) == 3);
  CHECK(delta_via_rank(path_graph(8)) == 2);
  CHECK(delta_via_rank(grid_graph(3, 3, false)) == 3);

  // Small periodic grids carry wrap-around diagonals: the product of the
  // generators along {(i,i)} is a pure X string of weight k, so the
  // weight-5 regime only starts at k = 5. Cross-checked by brute force.
  CHECK(delta_via_rank(grid_graph(3, 3, true)) == 3);
  CHECK(delta_via_bruteforce(grid_graph(3, 3, true)) == 3);
  CHECK(delta_via_rank(grid_graph(4, 4, true)) == 4);
  CHECK(delta_via_bruteforce(grid_graph(4, 4, true)) == 4);
  CHECK(delta_via_rank(grid_graph(5, 5, true)) == 5);

  CHECK_THROWS_AS(delta_via_rank(path_graph(2)), std::invalid_argument);

  Graph disconnected(4);
  disconnected.set_edge(0, 1, true);
  disconnected.set_edge(2, 3, true);
  CHECK_THROWS_AS(delta_via_rank(disconnected), std::invalid_argument);
}

TEST_CASE("delta witness achieves the weight") {
  for (const char* spec : {"cycle:6", "path:5", "grid:3x3:open", "complete:4"}) {
    Graph g = make_family(spec);
    auto result = delta_with_witness(g);
    CHECK(result.witness.weight() == result.delta);
    // witness must fix the graph state
    StateVector v = graph_state_vector(g);
    StateVector fixed = result.witness.apply(v);
    for (std::size_t i = 0; i < v.size(); ++i)
      CHECK(std::abs(fixed[i] - v[i]) < 1e-12);
  }
}

TEST_CASE("brute-force delta agrees with the rank route") {
  CHECK(delta_via_bruteforce(cycle_graph(6)) == 3);
  CHECK(delta_via_bruteforce(complete_graph(4)) == 2);

  for (std::size_t n = 3; n <= 6; ++n)
    for (const Graph& g : testgen::connected_graph_representatives(n))
      CHECK(delta_via_rank(g) == delta_via_bruteforce(g));

  Graph big(21);
  for (std::size_t i = 0; i + 1 < 21; ++i) big.set_edge(i, i + 1, true);
  CHECK_THROWS_AS(delta_via_bruteforce(big), SizeLimitError);
}

TEST_CASE("low weight subgroup dimensions") {
  auto c6 = graph_stabilizer(cycle_graph(6));
  auto d2 = low_weight_subgroup(c6, 2);
  CHECK(d2.s == 0);
  CHECK_FALSE(d2.complete);
  CHECK(d2.basis.empty());

  auto d3 = low_weight_subgroup(c6, 3);
  CHECK(d3.s == 6);
  CHECK(d3.complete);
  for (const auto& b : d3.basis) CHECK(b.weight() <= 3);

  auto k3 = graph_stabilizer(complete_graph(3));
  auto k3d2 = low_weight_subgroup(k3, 2);
  CHECK(k3d2.s == 2);
  CHECK_FALSE(k3d2.complete);

  // brute-force span oracle over all weight-<=2 elements
  gf2::BitMatrix mat(0, 0);
  std::vector<gf2::BitVec> rows;
  for (const auto& e : all_elements(k3)) {
    if (e.is_identity() || e.weight() > 2) continue;
    gf2::BitVec v(6);
    for (std::size_t q = 0; q < 3; ++q) {
      v.set(q, e.x_bits().get(q));
      v.set(3 + q, e.z_bits().get(q));
    }
    rows.push_back(v);
  }
  gf2::BitMatrix span(rows.size(), 6);
  for (std::size_t r = 0; r < rows.size(); ++r) span.set_row(r, rows[r]);
  CHECK(gf2::rank2(span) == 2);
}

TEST_CASE("subgroup basis elements stabilize the graph state") {
  for (const char* spec : {"cycle:5", "path:6", "grid:2x3:open"}) {
    Graph g = make_family(spec);
    auto s = graph_stabilizer(g);
    StateVector state = graph_state_vector(g);
    for (std::size_t d = 1; d <= g.order(); ++d) {
      auto rep = low_weight_subgroup(s, d);
      for (const auto& b : rep.basis) {
        StateVector fixed = b.apply(state);
        for (std::size_t i = 0; i < state.size(); ++i)
          CHECK(std::abs(fixed[i] - state[i]) < 1e-12);
      }
      if (rep.complete) break;
    }
  }
}

TEST_CASE("s is monotone in d and saturates at n") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = random_graph(rng, 5 + trial % 2, 0.5);
    auto s = graph_stabilizer(g);
    std::size_t last = 0;
    for (std::size_t d = 1; d <= g.order(); ++d) {
      auto rep = low_weight_subgroup(s, d);
      CHECK(rep.s >= last);
      last = rep.s;
    }
    CHECK(last == g.order());
  }
}

TEST_CASE("eta golden values") {
  for (std::size_t n = 4; n <= 8; ++n) {
    CHECK(eta(cycle_graph(n)) == 3);
    CHECK(eta(path_graph(n)) == 3);
  }
  // On open grids up to 4x4 every interior vertex is diagonal to a corner,
  // and corner*interior generator products have weight 4; the weight-5
  // floor only appears from 5x5 on. Verified against a full 2^n span
  // enumeration (see the brute-force case below).
  CHECK(eta(grid_graph(3, 3, false)) == 4);
  CHECK(eta(grid_graph(4, 4, false)) == 4);
  CHECK(eta(grid_graph(4, 4, true)) == 5);
  CHECK(eta(grid_graph(5, 5, true)) == 5);
}

TEST_CASE("eta matches a full-group span enumeration") {
  for (const char* spec : {"grid:3x3:open", "grid:3x3:periodic", "cycle:6",
                           "complete:5"}) {
    Graph g = make_family(spec);
    auto s = graph_stabilizer(g);
    const std::size_t n = g.order();
    // all 2^n elements, bucketed by weight, spanned incrementally
    std::size_t eta_brute = 0;
    for (std::size_t d = 1; d <= n && eta_brute == 0; ++d) {
      gf2::BitMatrix rows(0, 0);
      std::vector<gf2::BitVec> basis;
      for (const auto& e : all_elements(s)) {
        if (e.is_identity() || e.weight() > d) continue;
        gf2::BitVec v(2 * n);
        for (std::size_t q = 0; q < n; ++q) {
          v.set(q, e.x_bits().get(q));
          v.set(n + q, e.z_bits().get(q));
        }
        for (const auto& b : basis) {
          std::size_t pivot = 0;
          while (pivot < 2 * n && !b.get(pivot)) ++pivot;
          if (v.get(pivot)) v ^= b;
        }
        if (v.any()) basis.push_back(v);
      }
      if (basis.size() == n) eta_brute = d;
    }
    CHECK(eta(g) == eta_brute);
  }
}

TEST_CASE("degeneracy lower bound") {
  for (std::size_t n : {4, 5, 6})
    CHECK(degeneracy_lower_bound(path_graph(n), 2) ==
          (std::uint64_t{1} << (n - 2)));
  CHECK(degeneracy_lower_bound(cycle_graph(6), 2) == 64);
  CHECK(degeneracy_lower_bound(complete_graph(3), 2) == 2);
  CHECK_THROWS_AS(degeneracy_lower_bound(cycle_graph(6), 3),
                  std::invalid_argument);
}

TEST_CASE("sign flipped family") {
  Graph c4 = cycle_graph(4);
  auto s = graph_stabilizer(c4);
  auto rep = low_weight_subgroup(s, 2);
  CHECK(rep.s == 2);  // X0X2 and X1X3 generate the weight-2 subgroup
  const std::size_t free = 4 - rep.s;

  // gamma = 0 reproduces the original stabilizer group
  auto same = sign_flipped_family(s, 2, std::vector<bool>(free, false));
  StateVector original = graph_state_vector(c4);
  StateVector rebuilt = stabilizer_state_vector(same);
  for (std::size_t i = 0; i < original.size(); ++i)
    CHECK(std::abs(original[i] - rebuilt[i]) < 1e-12);

  // all gammas give valid, pairwise orthogonal stabilizer states
  std::vector<StateVector> states;
  for (std::size_t bits = 0; bits < (std::size_t{1} << free); ++bits) {
    std::vector<bool> gamma(free);
    for (std::size_t j = 0; j < free; ++j) gamma[j] = (bits >> j) & 1u;
    auto flipped = sign_flipped_family(s, 2, gamma);
    states.push_back(stabilizer_state_vector(flipped));
  }
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      std::complex<double> ip = 0;
      for (std::size_t k = 0; k < states[i].size(); ++k)
        ip += std::conj(states[i][k]) * states[j][k];
      CHECK(std::abs(ip) < 1e-10);
    }

  CHECK_THROWS_AS(sign_flipped_family(s, 2, std::vector<bool>(free + 1)),
                  std::invalid_argument);
}

TEST_CASE("minimal weight generating set") {
  auto gens = minimal_weight_generating_set(cycle_graph(6));
  REQUIRE(gens.size() == 6);
  for (const auto& g : gens) CHECK(g.weight() == 3);

  auto path_gens = minimal_weight_generating_set(path_graph(4));
  REQUIRE(path_gens.size() == 4);
  std::size_t max_w = 0;
  for (const auto& g : path_gens) max_w = std::max(max_w, g.weight());
  CHECK(max_w == 3);
  CHECK(path_gens[0].weight() == 2);  // boundary elements come first
}
