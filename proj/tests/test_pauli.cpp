#include <doctest.h>

#include <random>

#include "gstate/graph.hpp"
#include "gstate/hamiltonian.hpp"
#include "gstate/pauli.hpp"
#include "oracle.hpp"

using namespace gstate;

namespace {

PauliOperator random_pauli(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> letter(0, 3);
  gf2::BitVec x(n), z(n);
  for (std::size_t q = 0; q < n; ++q) {
    switch (letter(rng)) {
      case 1: x.set(q, true); break;
      case 2: z.set(q, true); break;
      case 3: x.set(q, true); z.set(q, true); break;
      default: break;
    }
  }
  std::uniform_int_distribution<int> phase(0, 3);
  return PauliOperator::from_masks(std::move(x), std::move(z), phase(rng));
}

}  // namespace

TEST_CASE("string rendering and parsing") {
  CHECK(PauliOperator::from_string("+XZI").str() == "+XZI");
  CHECK(PauliOperator::from_string("-IYY").str() == "-IYY");
  CHECK(PauliOperator::identity(3).str() == "+III");
  CHECK(PauliOperator::single(2, 1, 'Y').str() == "+IY");

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    PauliOperator p = random_pauli(rng, 1 + trial % 6);
    if (!p.hermitian()) continue;
    CHECK(PauliOperator::from_string(p.str()) == p);
  }
}

TEST_CASE("reference products") {
  PauliOperator xx = PauliOperator::from_string("+XXI");
  PauliOperator zz = PauliOperator::from_string("+ZZI");
  CHECK(multiply(xx, zz).str() == "-YYI");

  // Hermitian +-1 operators square to the identity with phase 0
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    PauliOperator p = random_pauli(rng, 3);
    if (!p.hermitian()) continue;
    PauliOperator sq = multiply(p, p);
    CHECK(sq.is_identity());
    CHECK(sq.phase_exp() == 0);
  }

  PauliOperator a = PauliOperator::from_string("+ZXZI");
  PauliOperator b = PauliOperator::from_string("+IZXZ");
  PauliOperator prod = multiply(a, b);
  CHECK(prod.weight() == 4);
  CHECK(oracle::dense_pauli(prod).isApprox(
      oracle::dense_pauli(a) * oracle::dense_pauli(b), 1e-12));
}

TEST_CASE("commutation") {
  PauliOperator x0 = PauliOperator::single(2, 0, 'X');
  PauliOperator z0 = PauliOperator::single(2, 0, 'Z');
  CHECK(commutes(x0, x0));
  CHECK_FALSE(commutes(x0, z0));

  auto gens = graph_stabilizer(cycle_graph(6)).generators;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      CHECK(commutes(gens[i], gens[j]));
}

TEST_CASE("weight") {
  CHECK(PauliOperator::identity(5).weight() == 0);
  CHECK(PauliOperator::from_string("+ZXZII").weight() == 3);
  CHECK(PauliOperator::from_string("+XXI").weight() == 2);
}

TEST_CASE("hermiticity tracks phase and Y count") {
  // X Z with phase 0 is anti-Hermitian territory: i X Z = Y is the
  // Hermitian combination.
  gf2::BitVec x(1), z(1);
  x.set(0, true);
  z.set(0, true);
  PauliOperator xz = PauliOperator::from_masks(x, z, 0);
  CHECK_FALSE(xz.hermitian());
  CHECK_THROWS_AS(xz.sign(), std::logic_error);
  PauliOperator y = PauliOperator::from_masks(x, z, 1);
  CHECK(y.hermitian());
  CHECK(y.sign() == 1);
  PauliOperator minus_y = PauliOperator::from_masks(x, z, 3);
  CHECK(minus_y.sign() == -1);
}

TEST_CASE("apply on basis states") {
  StateVector zero = {1, 0};
  PauliOperator x = PauliOperator::single(1, 0, 'X');
  StateVector one = x.apply(zero);
  CHECK(one[0] == std::complex<double>(0, 0));
  CHECK(one[1] == std::complex<double>(1, 0));

  PauliOperator id = PauliOperator::identity(2);
  StateVector v = {0.5, 0.5, 0.5, 0.5};
  CHECK(id.apply(v) == v);
}

TEST_CASE("graph-state generators fix the state vector") {
  Graph c4 = cycle_graph(4);
  StateVector g = graph_state_vector(c4);
  for (const auto& gen : graph_stabilizer(c4).generators) {
    StateVector fixed = gen.apply(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(std::abs(fixed[i] - g[i]) < 1e-12);
  }
}

TEST_CASE("random agreement with the dense oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> size(1, 3);
  std::uniform_real_distribution<double> amp(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = size(rng);
    PauliOperator g = random_pauli(rng, n);
    PauliOperator h = random_pauli(rng, n);

    oracle::Mat dg = oracle::dense_pauli(g);
    oracle::Mat dh = oracle::dense_pauli(h);
    CHECK(oracle::dense_pauli(multiply(g, h)).isApprox(dg * dh, 1e-12));
    bool commute_dense = (dg * dh - dh * dg).norm() < 1e-12;
    CHECK(commutes(g, h) == commute_dense);

    StateVector v(std::size_t{1} << n);
    for (auto& a : v) a = {amp(rng), amp(rng)};
    oracle::Vec expected = dg * oracle::to_eigen(v);
    CHECK(oracle::to_eigen(g.apply(v)).isApprox(expected, 1e-12));
  }
}

TEST_CASE("associativity with exact phases") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + trial % 3;
    PauliOperator a = random_pauli(rng, n);
    PauliOperator b = random_pauli(rng, n);
    PauliOperator c = random_pauli(rng, n);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("commutation matches the product phases") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + trial % 3;
    PauliOperator a = random_pauli(rng, n);
    PauliOperator b = random_pauli(rng, n);
    PauliOperator ab = multiply(a, b);
    PauliOperator ba = multiply(b, a);
    int diff = (ab.phase_exp() - ba.phase_exp() + 4) % 4;
    CHECK(commutes(a, b) == (diff == 0));
    if (!commutes(a, b)) CHECK(diff == 2);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(
      multiply(PauliOperator::identity(2), PauliOperator::identity(3)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      commutes(PauliOperator::identity(2), PauliOperator::identity(3)),
      std::invalid_argument);
  StateVector wrong(3);
  CHECK_THROWS_AS(PauliOperator::identity(2).apply(wrong),
                  std::invalid_argument);
}
