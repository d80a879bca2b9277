#include <doctest.h>

#include <cmath>
#include <random>

#include "gstate/errors.hpp"
#include "gstate/graph.hpp"
#include "gstate/hamiltonian.hpp"
#include "gstate/stabilizer.hpp"
#include "oracle.hpp"

using namespace gstate;

namespace {

PauliSumHamiltonian random_hamiltonian(std::mt19937_64& rng, std::size_t n,
                                       std::size_t locality,
                                       std::size_t terms) {
  std::uniform_real_distribution<double> coeff(-1, 1);
  std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
  std::uniform_int_distribution<int> letter(0, 2);
  const char letters[3] = {'X', 'Y', 'Z'};
  PauliSumHamiltonian h(n);
  for (std::size_t t = 0; t < terms; ++t) {
    PauliOperator op = PauliOperator::identity(n);
    std::uniform_int_distribution<std::size_t> w(1, locality);
    std::size_t want = w(rng);
    std::vector<std::size_t> qubits;
    while (qubits.size() < want) {
      std::size_t q = qubit(rng);
      if (std::find(qubits.begin(), qubits.end(), q) == qubits.end())
        qubits.push_back(q);
    }
    for (std::size_t q : qubits)
      op = multiply(op, PauliOperator::single(n, q, letters[letter(rng)]));
    h.add_term(coeff(rng), op);
  }
  return h;
}

double inner_abs(const StateVector& u, const StateVector& v) {
  std::complex<double> ip = 0;
  for (std::size_t i = 0; i < u.size(); ++i) ip += std::conj(u[i]) * v[i];
  return std::abs(ip);
}

}  // namespace

TEST_CASE("term merging and locality") {
  PauliSumHamiltonian h(3);
  h.add_term(1.0, PauliOperator::from_string("+XZI"));
  h.add_term(0.5, PauliOperator::from_string("-XZI"));  // merges to 0.5
  h.add_term(2.0, PauliOperator::from_string("+IIZ"));
  CHECK(h.term_count() == 2);
  CHECK(h.locality() == 2);
  for (const auto& t : h.terms())
    if (t.op.weight() == 2) CHECK(t.coeff == doctest::Approx(0.5));

  gf2::BitVec x(1), z(1);
  x.set(0, true);
  z.set(0, true);
  PauliOperator not_hermitian = PauliOperator::from_masks(x, z, 0);
  CHECK_THROWS_AS(h.add_term(1.0, not_hermitian), std::logic_error);
}

TEST_CASE("canonical Hamiltonian of a cycle") {
  Graph c6 = cycle_graph(6);
  PauliSumHamiltonian h = canonical_hamiltonian(c6);
  CHECK(h.term_count() == 6);
  CHECK(h.locality() == 3);
  for (const auto& t : h.terms()) CHECK(t.coeff == doctest::Approx(-1.0));

  SpectrumReport spec = spectrum(h);
  CHECK(spec.energies[0] == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK(spec.ground_degeneracy == 1);
  CHECK(spec.gap == doctest::Approx(2.0).epsilon(1e-10));
  // spectrum lives on the integers -n, -n+2, ..., n
  for (double e : spec.energies) {
    double nearest = std::round(e);
    CHECK(std::abs(e - nearest) < 1e-9);
    CHECK(std::abs(std::fmod(nearest + 6.0, 2.0)) < 1e-12);
  }

  StateVector g = graph_state_vector(c6);
  CHECK(fidelity(g, spec.ground_space[0]) >= 1.0 - 1e-10);
}

TEST_CASE("truncated stabilizer Hamiltonians") {
  Graph p4 = path_graph(4);
  PauliSumHamiltonian h2 = truncated_stabilizer_hamiltonian(p4, 2);
  CHECK(h2.term_count() == 2);  // the two boundary elements
  SpectrumReport spec = spectrum(h2);
  CHECK(spec.ground_degeneracy == 4);  // 2^{4-2}
  CHECK(spec.energies[0] == doctest::Approx(-2.0));

  Graph c6 = cycle_graph(6);
  PauliSumHamiltonian h3 = truncated_stabilizer_hamiltonian(c6, 3);
  // 6 generators plus the two alternating X strings X0X2X4 and X1X3X5
  CHECK(h3.term_count() == 8);
  bool has_x_string = false;
  for (const auto& t : h3.terms())
    if (t.op.str() == "+XIXIXI") has_x_string = true;
  CHECK(has_x_string);
  SpectrumReport spec3 = spectrum(h3);
  StateVector g = graph_state_vector(c6);
  StateVector hg = matvec(h3, g);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(hg[i] - spec3.energies[0] * g[i]) < 1e-9);

  // d = n keeps every nonidentity element: unique ground state at 1 - 2^n
  Graph p3 = path_graph(3);
  PauliSumHamiltonian full = truncated_stabilizer_hamiltonian(p3, 3);
  CHECK(full.term_count() == 7);
  SpectrumReport spec_full = spectrum(full);
  CHECK(spec_full.energies[0] == doctest::Approx(-7.0));
  CHECK(spec_full.ground_degeneracy == 1);

  CHECK_THROWS_AS(truncated_stabilizer_hamiltonian(c6, 2),
                  std::invalid_argument);
}

TEST_CASE("graph state vector amplitudes") {
  Graph p3 = path_graph(3);
  StateVector v = graph_state_vector(p3);
  const double amp = 1.0 / std::sqrt(8.0);
  for (std::size_t idx = 0; idx < 8; ++idx) {
    int x0 = idx & 1, x1 = (idx >> 1) & 1, x2 = (idx >> 2) & 1;
    double expected = ((x0 * x1 + x1 * x2) % 2) ? -amp : amp;
    CHECK(v[idx].real() == doctest::Approx(expected));
    CHECK(v[idx].imag() == 0.0);
  }
  double norm = 0;
  for (const auto& a : v) norm += std::norm(a);
  CHECK(norm == doctest::Approx(1.0));

  CHECK_THROWS_AS(graph_state_vector(path_graph(5), 4), SizeLimitError);
}

TEST_CASE("stabilizer state vector") {
  Graph c4 = cycle_graph(4);
  StateVector via_projection = stabilizer_state_vector(graph_stabilizer(c4));
  StateVector direct = graph_state_vector(c4);
  for (std::size_t i = 0; i < direct.size(); ++i)
    CHECK(std::abs(via_projection[i] - direct[i]) < 1e-12);

  // GHZ stabilizer
  std::vector<PauliOperator> gens = {PauliOperator::from_string("+XXX"),
                                     PauliOperator::from_string("+ZZI"),
                                     PauliOperator::from_string("+IZZ")};
  StateVector ghz =
      stabilizer_state_vector(StabilizerGroup::from_generators(gens));
  const double amp = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(ghz[0] - amp) < 1e-12);
  CHECK(std::abs(ghz[7] - amp) < 1e-12);
  for (std::size_t i = 1; i < 7; ++i) CHECK(std::abs(ghz[i]) < 1e-12);
}

TEST_CASE("matvec against the dense oracle") {
  PauliSumHamiltonian only_identity(2);
  only_identity.add_term(2.5, PauliOperator::identity(2));
  StateVector v = {1, 2, 3, 4};
  StateVector out = matvec(only_identity, v);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(out[i] == std::complex<double>(2.5) * v[i]);

  Graph c4 = cycle_graph(4);
  StateVector g = graph_state_vector(c4);
  StateVector hg = matvec(canonical_hamiltonian(c4), g);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(hg[i] + 4.0 * g[i]) < 1e-12);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> amp(-1, 1);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 3;
    PauliSumHamiltonian h = random_hamiltonian(rng, n, n, 4);
    StateVector x(std::size_t{1} << n);
    for (auto& a : x) a = {amp(rng), amp(rng)};
    oracle::Vec expected = oracle::dense_hamiltonian(h) * oracle::to_eigen(x);
    CHECK(oracle::to_eigen(matvec(h, x)).isApprox(expected, 1e-12));
  }
}

TEST_CASE("frobenius energy norm") {
  PauliSumHamiltonian single(4);
  single.add_term(1.0, PauliOperator::from_string("+XIII"));
  CHECK(frobenius_energy_norm(single) == doctest::Approx(4.0));  // 2^{n/2}

  CHECK(frobenius_energy_norm(canonical_hamiltonian(cycle_graph(6))) ==
        doctest::Approx(std::sqrt(384.0)));

  CHECK(frobenius_energy_norm(PauliSumHamiltonian(3)) == 0.0);

  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    PauliSumHamiltonian h = random_hamiltonian(rng, 6, 3, 12);
    SpectrumReport spec = spectrum(h);
    double sum_sq = 0;
    for (double e : spec.energies) sum_sq += e * e;
    CHECK(std::sqrt(sum_sq) ==
          doctest::Approx(frobenius_energy_norm(h)).epsilon(1e-8));
  }
}

TEST_CASE("fidelity") {
  StateVector a = {1, 0, 0, 0};
  StateVector b = {0, 1, 0, 0};
  CHECK(fidelity(a, a) == doctest::Approx(1.0));
  CHECK(fidelity(a, b) == doctest::Approx(0.0));
  StateVector unnormalized = {2, 0, 0, 0};
  CHECK_THROWS_AS(fidelity(a, unnormalized), std::invalid_argument);
}

TEST_CASE("ising chain ground degeneracy") {
  const std::size_t n = 6;
  PauliSumHamiltonian ising(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    ising.add_term(-1.0, multiply(PauliOperator::single(n, i, 'Z'),
                                  PauliOperator::single(n, i + 1, 'Z')));
  SpectrumReport spec = spectrum(ising);
  CHECK(spec.ground_degeneracy == 2);
  CHECK(spec.energies[0] == doctest::Approx(-5.0));
}

TEST_CASE("dense and iterative solvers agree") {
  std::mt19937_64 rng(43);
  PauliSumHamiltonian h = random_hamiltonian(rng, 8, 3, 20);
  SpectrumReport dense = spectrum(h);

  SpectrumOptions lanczos_options;
  lanczos_options.mode = SpectrumMode::kLowest;
  lanczos_options.lowest_k = 4;
  lanczos_options.tol = 1e-10;
  SpectrumReport lanczos = spectrum(h, lanczos_options);
  const double scale = frobenius_energy_norm(h);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(std::abs(lanczos.energies[i] - dense.energies[i]) < 1e-8 * scale);

  SpectrumOptions block_options = lanczos_options;
  block_options.block_size = 16;
  SpectrumReport block = spectrum(h, block_options);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(std::abs(block.energies[i] - dense.energies[i]) < 1e-8 * scale);

  // eigenvector quality through the residual (vector-vs-vector comparison
  // is ill-conditioned when the low end is nearly degenerate)
  for (const auto& ground : {lanczos.ground_space[0], block.ground_space[0]}) {
    StateVector hv = matvec(h, ground);
    double res = 0;
    for (std::size_t i = 0; i < hv.size(); ++i)
      res += std::norm(hv[i] - dense.energies[0] * ground[i]);
    CHECK(std::sqrt(res) < 1e-7 * scale);
  }
}

TEST_CASE("iterative solver finds degenerate ground pairs") {
  Graph p4 = path_graph(4);
  PauliSumHamiltonian h = truncated_stabilizer_hamiltonian(p4, 2);
  SpectrumOptions options;
  options.mode = SpectrumMode::kLowest;
  options.lowest_k = 6;
  SpectrumReport spec = spectrum(h, options);
  CHECK(spec.ground_degeneracy == 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(spec.energies[i] == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(spec.energies[4] > -2.0 + 1e-3);
}

TEST_CASE("dense limit is enforced") {
  PauliSumHamiltonian h(13);
  h.add_term(1.0, PauliOperator::single(13, 0, 'Z'));
  CHECK_THROWS_AS(spectrum(h), SizeLimitError);
}

TEST_CASE("Ky Fan maximum principle holds against random projectors") {
  std::mt19937_64 rng(44);
  const std::size_t n = 5;
  const std::size_t dim = 32;
  PauliSumHamiltonian h = random_hamiltonian(rng, n, 2, 10);
  SpectrumReport spec = spectrum(h);
  oracle::Mat dense = oracle::dense_hamiltonian(h);
  std::normal_distribution<double> gauss(0, 1);
  std::uniform_int_distribution<std::size_t> rank_dist(1, 8);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = rank_dist(rng);
    oracle::Mat q(dim, r);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < r; ++j) q(i, j) = {gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<oracle::Mat> qr(q);
    oracle::Mat basis = qr.householderQ() * oracle::Mat::Identity(dim, r);
    double trace = (basis.adjoint() * dense * basis).trace().real();
    double lowest_sum = 0;
    for (std::size_t i = 0; i < r; ++i) lowest_sum += spec.energies[i];
    CHECK(trace >= lowest_sum - 1e-9);
  }
}
