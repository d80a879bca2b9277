#pragma once

#include <json.hpp>

#include "gstate/bounds.hpp"
#include "gstate/gadget.hpp"
#include "gstate/graph.hpp"
#include "gstate/hamiltonian.hpp"
#include "gstate/stabilizer.hpp"

namespace gstate {

nlohmann::json graph_json(const Graph& g);
nlohmann::json spectrum_json(const PauliSumHamiltonian& h,
                             const SpectrumReport& report,
                             std::size_t max_listed_energies = 64);
nlohmann::json bound_json(const BoundReport& report);
nlohmann::json orbit_json(const OrbitMinDegree& report);
nlohmann::json gadget_json(const GadgetResult& result);
nlohmann::json sweep_json(const SweepReport& report);
nlohmann::json subgroup_json(const LowWeightSubgroupReport& report);

}  // namespace gstate
