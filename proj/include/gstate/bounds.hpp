#pragma once

#include <cstddef>
#include <cstdint>

#include "gstate/graph.hpp"
#include "gstate/hamiltonian.hpp"

namespace gstate {

/// Fidelity/spectrum trade-off report for a d-body Hamiltonian against a
/// graph-state target. All normalized quantities are dimensionless.
struct BoundReport {
  std::size_t d = 0;        // locality of the Hamiltonian
  std::uint64_t r = 0;      // 2^n / |S_d|
  double lhs = 0;           // (mean of lowest r energies - E0) / (sqrt2 |E|)
  double rhs = 0;           // sqrt(1 - F^2)
  double gap_lhs = 0;       // (r-1) dE / (sqrt2 r |E|), dE with multiplicity
  double fidelity = 0;      // max fidelity over the computed ground space
  bool satisfied = false;   // lhs <= rhs + tol and gap_lhs <= rhs + tol

  // Reporting extras.
  double clustered_gap = 0;      // distinct-level gap from the spectrum
  double clustered_gap_lhs = 0;  // corollary left side with the clustered gap
  double fidelity_ceiling = 1;   // sqrt(1 - clustered_gap_lhs^2), clamped
  bool degenerate_ground = false;  // clustered corollary is flagged when true
  std::size_t ground_degeneracy = 1;
  double frobenius_norm = 0;
  double ground_energy = 0;
  double tol = 0;
};

inline constexpr double kDefaultBoundTol = 1e-8;

/// Evaluates both sides of the fidelity/spectrum inequality for H against
/// the graph state of g. F is the maximal fidelity over the computed ground
/// space (the projection norm of |G> onto it), which keeps the check
/// deterministic when the ground level is degenerate. The inequality is a
/// theorem: satisfied must come back true on every valid input.
BoundReport theorem4_check(const Graph& g, const PauliSumHamiltonian& h,
                           double tol = kDefaultBoundTol);

/// Relative-gap corollary: reports dE/|E| and the implied fidelity ceiling
/// sqrt(1 - gap_lhs^2). Requires locality(h) < eta(g); the clustered-gap
/// form is flagged (degenerate_ground) when the ground level is degenerate,
/// where only the with-multiplicity form is guaranteed.
BoundReport gap_tradeoff(const Graph& g, const PauliSumHamiltonian& h,
                         double tol = kDefaultBoundTol);

}  // namespace gstate
