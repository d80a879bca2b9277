#include "gstate/bounds.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gstate/errors.hpp"
#include "gstate/stabilizer.hpp"

namespace gstate {

namespace {

BoundReport evaluate_bound(const Graph& g, const PauliSumHamiltonian& h,
                           double tol) {
  const std::size_t n = g.order();
  if (h.qubits() != n)
    throw std::invalid_argument(
        "bound check: Hamiltonian and graph sizes differ");

  BoundReport report;
  report.tol = tol;
  report.d = h.locality();

  StabilizerGroup stab = graph_stabilizer(g);
  const std::size_t s =
      report.d >= 1 ? low_weight_subgroup(stab, report.d).s : 0;
  report.r = std::uint64_t{1} << (n - s);

  SpectrumOptions options;
  options.mode = SpectrumMode::kFull;
  SpectrumReport spec;
  const std::size_t dim = std::size_t{1} << n;
  if (dim <= options.dense_dim_limit) {
    spec = spectrum(h, options);
  } else if (report.r <= 64) {
    options.mode = SpectrumMode::kLowest;
    options.lowest_k = std::max<std::size_t>(report.r, 2);
    spec = spectrum(h, options);
  } else {
    throw SizeLimitError(
        "bound check: r exceeds the requested eigenvalue count");
  }
  if (spec.energies.size() < report.r)
    throw SizeLimitError("bound check: fewer energies than r available");

  report.frobenius_norm = frobenius_energy_norm(h);
  report.ground_energy = spec.energies[0];
  report.ground_degeneracy = spec.ground_degeneracy;
  report.degenerate_ground = spec.ground_degeneracy > 1;
  report.clustered_gap = spec.gap;

  const double e0 = spec.energies[0];
  const double mean_r =
      std::accumulate(spec.energies.begin(), spec.energies.begin() + report.r,
                      0.0) /
      static_cast<double>(report.r);
  const double norm = report.frobenius_norm;
  const double inv = norm > 0 ? 1.0 / (std::sqrt(2.0) * norm) : 0.0;
  report.lhs = (mean_r - e0) * inv;

  const double gap_mult =
      spec.energies.size() > 1 ? spec.energies[1] - e0 : 0.0;
  const double r_factor =
      report.r > 1
          ? static_cast<double>(report.r - 1) / static_cast<double>(report.r)
          : 0.0;
  report.gap_lhs = r_factor * gap_mult * inv;
  report.clustered_gap_lhs = r_factor * spec.gap * inv;
  report.fidelity_ceiling = std::sqrt(std::max(
      0.0, 1.0 - report.clustered_gap_lhs * report.clustered_gap_lhs));

  // Max fidelity over the ground space: norm of the projection of |G>.
  StateVector target = graph_state_vector(g);
  double proj_sq = 0;
  for (const auto& vec : spec.ground_space) {
    std::complex<double> ip = 0;
    for (std::size_t i = 0; i < vec.size(); ++i)
      ip += std::conj(vec[i]) * target[i];
    proj_sq += std::norm(ip);
  }
  report.fidelity = std::min(1.0, std::sqrt(proj_sq));
  report.rhs = std::sqrt(std::max(0.0, 1.0 - proj_sq));

  report.satisfied = report.lhs <= report.rhs + tol &&
                     report.gap_lhs <= report.rhs + tol;
  return report;
}

}  // namespace

BoundReport theorem4_check(const Graph& g, const PauliSumHamiltonian& h,
                           double tol) {
  return evaluate_bound(g, h, tol);
}

BoundReport gap_tradeoff(const Graph& g, const PauliSumHamiltonian& h,
                         double tol) {
  const std::size_t d = h.locality();
  if (d >= eta(g))
    throw std::invalid_argument("gap_tradeoff: no constraint at locality " +
                                std::to_string(d));
  return evaluate_bound(g, h, tol);
}

}  // namespace gstate
