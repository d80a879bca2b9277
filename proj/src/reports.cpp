#include "gstate/reports.hpp"

namespace gstate {

using nlohmann::json;

json graph_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.order()}, {"edges", edges}};
}

json spectrum_json(const PauliSumHamiltonian& h, const SpectrumReport& report,
                   std::size_t max_listed_energies) {
  std::vector<double> listed = report.energies;
  bool truncated = listed.size() > max_listed_energies;
  if (truncated) listed.resize(max_listed_energies);
  return {{"n", h.qubits()},
          {"locality", h.locality()},
          {"term_count", h.term_count()},
          {"energies", listed},
          {"energies_truncated", truncated},
          {"full_spectrum", report.full},
          {"ground_energy", report.energies.empty() ? 0.0 : report.energies[0]},
          {"degeneracy", report.ground_degeneracy},
          {"gap", report.gap},
          {"frobenius_norm", report.frobenius_norm},
          {"method", report.method},
          {"tolerances", {{"cluster", report.cluster_tol}}}};
}

json bound_json(const BoundReport& report) {
  return {{"d", report.d},
          {"r", report.r},
          {"lhs", report.lhs},
          {"rhs", report.rhs},
          {"gap_lhs", report.gap_lhs},
          {"fidelity", report.fidelity},
          {"satisfied", report.satisfied},
          {"clustered_gap", report.clustered_gap},
          {"clustered_gap_lhs", report.clustered_gap_lhs},
          {"fidelity_ceiling", report.fidelity_ceiling},
          {"degenerate_ground", report.degenerate_ground},
          {"ground_degeneracy", report.ground_degeneracy},
          {"ground_energy", report.ground_energy},
          {"frobenius_norm", report.frobenius_norm},
          {"tol", report.tol}};
}

json orbit_json(const OrbitMinDegree& report) {
  return {{"min_degree", report.min_degree},
          {"witness", report.witness},
          {"exact", report.exact},
          {"orbit_size", report.orbit_size}};
}

json gadget_json(const GadgetResult& result) {
  json groups = json::array();
  for (const auto& g : result.layout.ancilla_groups) groups.push_back(g);
  json out = {{"target", graph_json(result.target)},
              {"layout",
               {{"system_qubits", result.layout.system_qubits},
                {"ancilla_groups", groups},
                {"delta", result.layout.delta},
                {"total_qubits", result.layout.total_qubits}}},
              {"term_count", result.hamiltonian.term_count()},
              {"locality", result.hamiltonian.locality()},
              {"coefficient_dynamic_range", result.coefficient_dynamic_range},
              {"scale_factor", result.scale_factor},
              {"spectral", result.spectral},
              {"warnings", result.warnings}};
  if (result.spectral) {
    out["fidelity"] = result.fidelity;
    out["ground_energy"] = result.ground_energy;
    out["relative_gap"] = result.relative_gap;
  }
  return out;
}

json sweep_json(const SweepReport& report) {
  json points = json::array();
  for (const auto& p : report.points)
    points.push_back({{"delta", p.delta},
                      {"fidelity", p.fidelity},
                      {"relative_gap", p.relative_gap},
                      {"dynamic_range", p.dynamic_range},
                      {"ground_energy", p.ground_energy}});
  return {{"points", points},
          {"fidelity_increasing_as_delta_shrinks",
           report.fidelity_increasing_as_delta_shrinks},
          {"dynamic_range_increasing_as_delta_shrinks",
           report.dynamic_range_increasing_as_delta_shrinks}};
}

json subgroup_json(const LowWeightSubgroupReport& report) {
  json basis = json::array();
  for (const auto& op : report.basis) basis.push_back(op.str());
  return {{"d", report.d},
          {"s", report.s},
          {"complete", report.complete},
          {"basis", basis}};
}

}  // namespace gstate
