#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gstate/graph.hpp"
#include "gstate/pauli.hpp"
#include "gstate/stabilizer.hpp"

namespace gstate {

using StateVector = std::vector<std::complex<double>>;

inline constexpr std::size_t kDefaultStateQubitLimit = 22;
inline constexpr std::size_t kDefaultDenseDimLimit = 4096;

struct PauliTerm {
  double coeff = 0;
  PauliOperator op;  // sign-normalized: the +/-1 is folded into coeff
};

/// Real-weighted sum of Hermitian Pauli terms with distinct (x,z) masks;
/// duplicates merge on insertion.
class PauliSumHamiltonian {
 public:
  PauliSumHamiltonian() = default;
  explicit PauliSumHamiltonian(std::size_t n) : n_(n) {}

  std::size_t qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  /// Max term weight; 0 for empty or identity-only Hamiltonians.
  std::size_t locality() const;

  /// Adds coeff * op. The operator must be Hermitian; its sign is folded
  /// into the stored coefficient. Terms with equal masks merge.
  void add_term(double coeff, const PauliOperator& op);

  /// Drops terms with |coeff| <= threshold.
  void prune(double threshold = 0.0);

  PauliSumHamiltonian& operator*=(double scale);
  PauliSumHamiltonian& operator+=(const PauliSumHamiltonian& other);

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Exact matrix-free product H v; no dense matrix materialized.
StateVector matvec(const PauliSumHamiltonian& h, const StateVector& v);

/// sqrt(2^n sum h^2) = sqrt(Tr H^2); exact, no diagonalization.
double frobenius_energy_norm(const PauliSumHamiltonian& h);

/// H = -sum of stabilizer generators; ground energy -n, gap exactly 2.
/// With minimal_weight_generators the generating set from
/// minimal_weight_generating_set is used instead of the vertex generators.
PauliSumHamiltonian canonical_hamiltonian(const Graph& g,
                                          bool minimal_weight_generators = false);

/// -1 coefficient on every nonidentity stabilizer element of weight <= d.
/// Throws std::invalid_argument when no such element exists.
PauliSumHamiltonian truncated_stabilizer_hamiltonian(const Graph& g,
                                                     std::size_t d);

/// Amplitudes 2^{-n/2} (-1)^{sum over edges of x_a x_b}.
StateVector graph_state_vector(const Graph& g,
                               std::size_t qubit_limit = kDefaultStateQubitLimit);

/// The unique unit vector fixed by all generators, found by iterated
/// (I+g)/2 projection of basis seeds. First nonzero amplitude made real
/// positive.
StateVector stabilizer_state_vector(const StabilizerGroup& s,
                                    std::size_t qubit_limit = kDefaultStateQubitLimit);

/// |<u|v>| for unit vectors (norms checked to 1e-8).
double fidelity(const StateVector& u, const StateVector& v);

enum class SpectrumMode { kFull, kLowest };

struct SpectrumOptions {
  SpectrumMode mode = SpectrumMode::kFull;
  std::size_t lowest_k = 8;      // kLowest only; capped at 64
  double tol = 1e-9;             // iterative residual: |Hv - Ev| <= tol * |E|
  double cluster_scale = 1e-6;   // level clustering at scale * max(1, |E|)
  bool want_ground_space = true;
  std::size_t dense_dim_limit = kDefaultDenseDimLimit;
  std::uint64_t seed = 17;
  std::size_t max_iterations = 2000;  // per eigenpair, iterative path
  // kLowest with block_size > 0 switches to Chebyshev-filtered block
  // subspace iteration. Use when the low end is a tight near-degenerate
  // cluster (penalty-style spectra); block_size should cover the cluster.
  std::size_t block_size = 0;
};

struct SpectrumReport {
  std::vector<double> energies;  // ascending; full spectrum or lowest k
  bool full = false;
  std::size_t ground_degeneracy = 1;  // within the clustering tolerance
  double gap = 0;                     // first distinct level minus E0
  double frobenius_norm = 0;
  double cluster_tol = 0;
  std::vector<StateVector> ground_space;  // orthonormal, optional
  std::string method;                     // "dense" or "iterative"
};

/// Dense symmetric eigendecomposition up to dense_dim_limit; Lanczos with
/// full reorthogonalization and deflation for lowest-k. Deterministic for a
/// fixed seed. Throws ConvergenceError when the iterative path stalls.
SpectrumReport spectrum(const PauliSumHamiltonian& h,
                        const SpectrumOptions& options = {});

}  // namespace gstate
