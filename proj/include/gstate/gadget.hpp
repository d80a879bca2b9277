#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "gstate/graph.hpp"
#include "gstate/hamiltonian.hpp"

namespace gstate {

/// Qubit bookkeeping for ancilla-mediated constructions. System qubits are
/// indices [0, system_qubits); ancillas are appended after them, grouped per
/// mediated term.
struct GadgetLayout {
  std::size_t system_qubits = 0;
  std::vector<std::vector<std::size_t>> ancilla_groups;
  double delta = 0;
  std::size_t total_qubits = 0;
};

struct GadgetResult {
  GadgetLayout layout;
  PauliSumHamiltonian hamiltonian;  // weight <= 2 terms only
  Graph target;

  bool spectral = false;  // spectral fields valid only when true
  double fidelity = 0;    // sqrt(<G| rho_sys |G>) for the computed ground state
  double ground_energy = 0;
  double relative_gap = 0;            // clustered gap / |E|
  double coefficient_dynamic_range = 1;  // max|h| / min|h|
  double scale_factor = 1;  // multiplier applied when normalized
  std::vector<std::string> warnings;
};

struct GadgetOptions {
  bool spectral = true;   // evaluate the ground state when size permits
  bool normalized = true; // rescale the huge prefactor; scale_factor records it
  std::size_t spectral_qubit_limit = 16;
  std::size_t lowest_k = 4;
  double tol = 1e-10;
  std::uint64_t seed = 17;
};

/// Three-qubit penalty block: eigenvalue 0 on the two aligned ancilla
/// states, delta^-3 on the other six.
PauliSumHamiltonian ancilla_triple_penalty(double delta);

/// Two-body Hamiltonian whose low-energy sector reproduces the periodic
/// linear-cluster Hamiltonian through three mediating ancillas per site.
/// Site i couples through operators (2I + sigma)/n^3 on its neighborhood;
/// the prefactor is chosen so the aligned-ancilla sector is lowest.
GadgetResult linear_cluster_gadget(std::size_t n, double delta,
                                   const GadgetOptions& options = {});

enum class SplitAncillaMode {
  kPerTerm,        // one fresh ancilla per weight-4 term
  kPerSystemQubit  // ancilla named after the term's X-bearing qubit
};

struct SplitResult {
  PauliSumHamiltonian hamiltonian;  // locality <= 3
  GadgetLayout layout;
  // Per split term: (penalty coefficient, coupling coefficient).
  std::vector<std::array<double, 2>> schedule;
};

/// Splits each weight-4 term into two halves coupled through one ancilla;
/// terms of weight <= 3 pass through unchanged. The optional pairing gives,
/// per weight-4 term in term order, the two acting qubits of the first
/// half; the default takes the two lowest.
SplitResult split_four_to_three(
    const PauliSumHamiltonian& h4, double delta,
    SplitAncillaMode mode = SplitAncillaMode::kPerTerm,
    const std::vector<std::array<std::size_t, 2>>& pairing = {});

/// Per-site coefficients of the honeycomb construction. The paper-level
/// schedule fixes only the scale hierarchy (delta^-3 triangle penalty,
/// delta^-2 couplings, delta^-1 compensations); default_schedule encodes
/// that hierarchy and is meant to be overridden for quantitative studies.
struct HoneycombCoefficients {
  double a, b, c, d, e, d1, d2;
  static HoneycombCoefficients default_schedule(double delta);
};

/// Assembles the 2-body honeycomb-lattice construction: per site two
/// ancilla triangles, system/ancilla triangles through a seventh ancilla,
/// triangle-linking couplings and single-qubit terms including the
/// |1><1| penalty on the seventh ancilla. Requires the periodic lattice
/// (every site must have exactly three neighbors). Structural validation
/// always runs; spectral evaluation only below the qubit limit.
GadgetResult honeycomb_gadget(std::size_t cell_rows, std::size_t cell_cols,
                              double delta, const HoneycombCoefficients& coeffs,
                              const GadgetOptions& options = {});

/// Generic pipeline: minimal-weight generating set, repeated term splitting
/// down to locality 3, then the three-ancilla reduction to locality 2.
GadgetResult generic_gadget(const Graph& g, double delta,
                            const GadgetOptions& options = {});

struct SweepPoint {
  double delta = 0;
  double fidelity = 0;
  double relative_gap = 0;
  double dynamic_range = 1;
  double ground_energy = 0;
};

struct SweepReport {
  std::vector<SweepPoint> points;  // in the order the deltas were given
  // Evaluated on the points sorted by descending delta.
  bool fidelity_increasing_as_delta_shrinks = true;
  bool dynamic_range_increasing_as_delta_shrinks = true;
};

SweepReport gadget_fidelity_sweep(
    const std::function<GadgetResult(double)>& builder,
    const std::vector<double>& deltas);

}  // namespace gstate
