// Command-line frontend: graph-state locality analyses with JSON reports.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "gstate/bounds.hpp"
#include "gstate/errors.hpp"
#include "gstate/gadget.hpp"
#include "gstate/graph.hpp"
#include "gstate/hamiltonian.hpp"
#include "gstate/reports.hpp"
#include "gstate/stabilizer.hpp"

using nlohmann::json;
using namespace gstate;

namespace {

struct CommonOptions {
  std::string graph_spec;
  std::string edge_list;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 17;
  std::size_t threads = 1;
  bool verify = false;
  bool dry_run = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, const char* graph_flag) {
  cmd->add_option(graph_flag, opts.graph_spec,
                  "graph family spec, e.g. cycle:6, grid:3x3:periodic");
  cmd->add_option("--edge-list", opts.edge_list,
                  "path to an edge-list file (first line n, then u v pairs)");
  cmd->add_option("--out", opts.out_path, "output path (default stdout)");
  cmd->add_option("--format", opts.format, "json or csv (csv: sweeps only)")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", opts.seed, "random seed (reports reproduce bit-identically)");
  cmd->add_option("--threads", opts.threads, "thread budget recorded in the report");
  cmd->add_flag("--verify", opts.verify, "additionally run invariant checks on this instance");
  cmd->add_flag("--dry-run", opts.dry_run, "validate inputs without computing");
}

Graph resolve_graph(const CommonOptions& opts) {
  if (opts.graph_spec.empty() == opts.edge_list.empty())
    throw std::invalid_argument(
        "exactly one graph source required (--graph or --edge-list)");
  if (!opts.graph_spec.empty()) return make_family(opts.graph_spec);
  return read_edge_list_file(opts.edge_list);
}

json config_json(const CommonOptions& opts) {
  return {{"graph", opts.graph_spec.empty() ? opts.edge_list : opts.graph_spec},
          {"format", opts.format},
          {"seed", opts.seed},
          {"threads", opts.threads},
          {"verify", opts.verify}};
}

void emit(const CommonOptions& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(opts.out_path);
  if (!out)
    throw std::invalid_argument("cannot open output path '" + opts.out_path + "'");
  out << text << "\n";
}

bool handle_dry_run(const CommonOptions& opts, const Graph& g) {
  if (!opts.dry_run) return false;
  json report = {{"dry_run", true}, {"graph", graph_json(g)},
                 {"config", config_json(opts)}};
  emit(opts, report.dump(2));
  return true;
}

void require_json(const CommonOptions& opts) {
  if (opts.format != "json")
    throw std::invalid_argument("this subcommand only emits json");
}

int run_delta(const CommonOptions& opts) {
  Graph g = resolve_graph(opts);
  if (handle_dry_run(opts, g)) return 0;
  require_json(opts);

  DeltaWitness result = delta_with_witness(g);
  json report = {{"graph", graph_json(g)},
                 {"n", g.order()},
                 {"delta", result.delta},
                 {"delta_witness", result.witness.str()},
                 {"config", config_json(opts)}};
  if (opts.verify) {
    json verified;
    if (g.order() <= 20)
      verified["bruteforce_agrees"] = delta_via_bruteforce(g) == result.delta;
    auto orbit = lc_orbit_min_degree(g);
    verified["orbit_exact"] = orbit.exact;
    if (orbit.exact)
      verified["orbit_degree_agrees"] = orbit.min_degree + 1 == result.delta;
    report["verified"] = verified;
  }
  emit(opts, report.dump(2));
  return 0;
}

int run_eta(const CommonOptions& opts) {
  Graph g = resolve_graph(opts);
  if (handle_dry_run(opts, g)) return 0;
  require_json(opts);

  DeltaWitness dres = delta_with_witness(g);
  StabilizerGroup s = graph_stabilizer(g);
  json s_by_d = json::array();
  json bounds_by_d = json::array();
  std::size_t eta_value = 0;
  for (std::size_t d = dres.delta; d <= g.order(); ++d) {
    auto rep = low_weight_subgroup(s, d);
    s_by_d.push_back({{"d", d}, {"s", rep.s}, {"complete", rep.complete}});
    if (!rep.complete)
      bounds_by_d.push_back(
          {{"d", d},
           {"degeneracy_bound",
            (std::uint64_t{1} << (g.order() - rep.s))}});
    if (rep.complete) {
      eta_value = d;
      break;
    }
  }
  json report = {{"graph", graph_json(g)},
                 {"n", g.order()},
                 {"delta", dres.delta},
                 {"delta_witness", dres.witness.str()},
                 {"eta", eta_value},
                 {"s_by_d", s_by_d},
                 {"degeneracy_bound_by_d", bounds_by_d},
                 {"config", config_json(opts)}};
  if (opts.verify) {
    bool monotone = true;
    std::size_t last = 0;
    for (const auto& entry : s_by_d) {
      std::size_t sv = entry["s"];
      if (sv < last) monotone = false;
      last = sv;
    }
    report["verified"] = {{"s_monotone", monotone},
                          {"eta_at_least_3", eta_value >= 3},
                          {"eta_at_least_delta", eta_value >= dres.delta}};
  }
  emit(opts, report.dump(2));
  return 0;
}

int run_spectrum(const CommonOptions& opts, const std::string& which,
                 std::size_t truncate_d, const std::string& mode,
                 std::size_t lowest_k, double tol, double cluster_scale,
                 std::size_t dense_limit) {
  Graph g = resolve_graph(opts);
  if (handle_dry_run(opts, g)) return 0;
  require_json(opts);

  PauliSumHamiltonian h = which == "truncated"
                              ? truncated_stabilizer_hamiltonian(g, truncate_d)
                              : canonical_hamiltonian(g);
  SpectrumOptions options;
  options.mode = mode == "lowest" ? SpectrumMode::kLowest : SpectrumMode::kFull;
  options.lowest_k = lowest_k;
  options.tol = tol;
  options.cluster_scale = cluster_scale;
  options.dense_dim_limit = dense_limit;
  options.seed = opts.seed;
  SpectrumReport spec = spectrum(h, options);

  json report = spectrum_json(h, spec);
  report["hamiltonian"] = which;
  if (which == "truncated") report["truncate_d"] = truncate_d;
  report["config"] = config_json(opts);
  report["config"]["tol"] = tol;
  report["config"]["cluster_scale"] = cluster_scale;
  report["config"]["dense_limit"] = dense_limit;
  if (opts.verify && spec.full) {
    double sum_sq = 0;
    for (double e : spec.energies) sum_sq += e * e;
    double fro = frobenius_energy_norm(h);
    report["verified"] = {
        {"frobenius_consistent",
         std::abs(std::sqrt(sum_sq) - fro) <= 1e-8 * std::max(1.0, fro)}};
  }
  emit(opts, report.dump(2));
  return 0;
}

int run_bound_check(const CommonOptions& opts, std::size_t locality,
                    std::size_t samples, double tol) {
  Graph g = resolve_graph(opts);
  if (handle_dry_run(opts, g)) return 0;

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> coeff(-1, 1);
  const char letters[3] = {'X', 'Y', 'Z'};

  std::ostringstream out;
  if (opts.format == "csv")
    out << "sample,d,r,lhs,rhs,gap_lhs,fidelity,satisfied\n";

  bool all_satisfied = true;
  for (std::size_t sample = 0; sample < samples; ++sample) {
    PauliSumHamiltonian h(g.order());
    std::vector<int> digits(g.order(), 0);
    while (true) {
      std::size_t weight = 0;
      for (int v : digits) weight += v != 0;
      if (weight >= 1 && weight <= locality) {
        PauliOperator op = PauliOperator::identity(g.order());
        for (std::size_t q = 0; q < g.order(); ++q)
          if (digits[q] != 0)
            op = multiply(op,
                          PauliOperator::single(g.order(), q, letters[digits[q] - 1]));
        h.add_term(coeff(rng), op);
      }
      std::size_t pos = 0;
      while (pos < g.order() && digits[pos] == 3) digits[pos++] = 0;
      if (pos == g.order()) break;
      ++digits[pos];
    }

    BoundReport report = theorem4_check(g, h, tol);
    all_satisfied &= report.satisfied;
    if (opts.verify) {
      PauliSumHamiltonian scaled = h;
      scaled *= 2.0;
      all_satisfied &= theorem4_check(g, scaled, tol).satisfied;
    }
    if (opts.format == "csv") {
      out << sample << "," << report.d << "," << report.r << "," << report.lhs
          << "," << report.rhs << "," << report.gap_lhs << ","
          << report.fidelity << "," << (report.satisfied ? 1 : 0) << "\n";
    } else {
      json line = bound_json(report);
      line["sample"] = sample;
      line["config"] = config_json(opts);
      line["config"]["locality"] = locality;
      line["config"]["samples"] = samples;
      line["config"]["tol"] = tol;
      out << line.dump() << "\n";
    }
  }
  std::string text = out.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  emit(opts, text);
  return all_satisfied ? 0 : 1;
}

int run_gadget(const CommonOptions& opts, const std::string& type,
               const std::string& deltas_text, const std::string& mode,
               bool raw_scale) {
  Graph g = resolve_graph(opts);

  std::vector<double> deltas;
  std::stringstream ss(deltas_text);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) deltas.push_back(std::stod(token));
  if (deltas.empty()) throw std::invalid_argument("gadget: no deltas given");

  if (handle_dry_run(opts, g)) return 0;

  GadgetOptions options;
  options.spectral = mode == "spectral";
  options.normalized = !raw_scale;
  options.seed = opts.seed;

  std::string resolved = type;
  if (resolved == "auto") {
    if (!opts.graph_spec.empty() && opts.graph_spec.rfind("cycle:", 0) == 0)
      resolved = "linear";
    else if (!opts.graph_spec.empty() &&
             opts.graph_spec.rfind("honeycomb:", 0) == 0)
      resolved = "honeycomb";
    else
      resolved = "generic";
  }

  auto build = [&](double delta) -> GadgetResult {
    if (resolved == "linear") return linear_cluster_gadget(g.order(), delta, options);
    if (resolved == "honeycomb") {
      if (opts.graph_spec.rfind("honeycomb:", 0) != 0)
        throw std::invalid_argument(
            "honeycomb gadget needs a honeycomb:RxC:periodic target");
      auto body = opts.graph_spec.substr(10);
      auto x = body.find('x');
      auto colon = body.find(':');
      std::size_t rows = std::stoul(body.substr(0, x));
      std::size_t cols = std::stoul(body.substr(x + 1, colon - x - 1));
      return honeycomb_gadget(rows, cols, delta,
                              HoneycombCoefficients::default_schedule(delta),
                              options);
    }
    return generic_gadget(g, delta, options);
  };

  std::vector<GadgetResult> results;
  results.reserve(deltas.size());
  for (double d : deltas) results.push_back(build(d));

  if (opts.format == "csv") {
    std::ostringstream out;
    out << "delta,fidelity,relative_gap,dynamic_range,ground_energy\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      out << deltas[i] << "," << (r.spectral ? r.fidelity : 0.0) << ","
          << (r.spectral ? r.relative_gap : 0.0) << ","
          << r.coefficient_dynamic_range << ","
          << (r.spectral ? r.ground_energy : 0.0) << "\n";
    }
    std::string text = out.str();
    text.pop_back();
    emit(opts, text);
    return 0;
  }

  json per_delta = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    json entry = gadget_json(results[i]);
    entry["delta"] = deltas[i];
    per_delta.push_back(entry);
  }
  json report = {{"gadget", resolved},
                 {"mode", mode},
                 {"target", graph_json(g)},
                 {"locality", results[0].hamiltonian.locality()},
                 {"term_count", results[0].hamiltonian.term_count()},
                 {"layout", gadget_json(results[0])["layout"]},
                 {"per_delta", per_delta},
                 {"config", config_json(opts)}};
  report["config"]["deltas"] = deltas;
  report["config"]["normalized"] = !raw_scale;
  if (opts.verify) {
    bool audit = true;
    for (const auto& r : results)
      audit &= r.hamiltonian.locality() <= 2;
    SpectrumReport penalty = spectrum(ancilla_triple_penalty(deltas[0]));
    report["verified"] = {{"locality_at_most_2", audit},
                          {"penalty_kernel_dim_2",
                           penalty.ground_degeneracy == 2}};
  }
  emit(opts, report.dump(2));
  return 0;
}

int run_orbit(const CommonOptions& opts, std::size_t budget) {
  Graph g = resolve_graph(opts);
  if (handle_dry_run(opts, g)) return 0;
  require_json(opts);

  OrbitMinDegree result = lc_orbit_min_degree(g, budget);
  json report = orbit_json(result);
  report["graph"] = graph_json(g);
  report["config"] = config_json(opts);
  report["config"]["budget"] = budget;
  if (opts.verify) {
    Graph replay = g;
    for (std::size_t v : result.witness) replay = local_complement(replay, v);
    report["verified"] = {
        {"witness_reproduces_degree", replay.min_degree() == result.min_degree}};
  }
  emit(opts, report.dump(2));
  return 0;
}

int run_state(const CommonOptions& opts, std::size_t limit) {
  Graph g = resolve_graph(opts);
  if (handle_dry_run(opts, g)) return 0;
  require_json(opts);

  StateVector v = graph_state_vector(g, limit);
  std::vector<double> amplitudes;
  amplitudes.reserve(v.size());
  for (const auto& a : v) amplitudes.push_back(a.real());
  json report = {{"graph", graph_json(g)},
                 {"n", g.order()},
                 {"amplitudes", amplitudes},
                 {"config", config_json(opts)}};
  if (opts.verify) {
    bool fixed = true;
    for (const auto& gen : graph_stabilizer(g).generators) {
      StateVector gv = gen.apply(v);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(gv[i] - v[i]) > 1e-12) fixed = false;
    }
    report["verified"] = {{"generators_fix_state", fixed}};
  }
  emit(opts, report.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-state ground-state locality toolkit"};
  app.require_subcommand(1);

  CommonOptions delta_opts, eta_opts, spectrum_opts, bound_opts, gadget_opts,
      orbit_opts, state_opts;
  if (const char* env = std::getenv("GSTATE_THREADS")) {
    std::size_t t = std::strtoul(env, nullptr, 10);
    if (t > 0)
      for (auto* o : {&delta_opts, &eta_opts, &spectrum_opts, &bound_opts,
                      &gadget_opts, &orbit_opts, &state_opts})
        o->threads = t;
  }

  CLI::App* delta_cmd = app.add_subcommand("delta", "minimal stabilizer weight");
  add_common(delta_cmd, delta_opts, "--graph");

  CLI::App* eta_cmd =
      app.add_subcommand("eta", "minimal locality for a non-degenerate ground state");
  add_common(eta_cmd, eta_opts, "--graph");

  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalue reports");
  add_common(spectrum_cmd, spectrum_opts, "--graph");
  std::string which = "canonical";
  std::size_t truncate_d = 2;
  std::string spectrum_mode = "full";
  std::size_t lowest_k = 8;
  double tol = 1e-9, cluster_scale = 1e-6;
  std::size_t dense_limit = kDefaultDenseDimLimit;
  spectrum_cmd->add_option("--hamiltonian", which, "canonical or truncated")
      ->check(CLI::IsMember({"canonical", "truncated"}));
  spectrum_cmd->add_option("--d", truncate_d, "locality cutoff for truncated");
  spectrum_cmd->add_option("--mode", spectrum_mode, "full or lowest")
      ->check(CLI::IsMember({"full", "lowest"}));
  spectrum_cmd->add_option("--k", lowest_k, "eigenpair count in lowest mode");
  spectrum_cmd->add_option("--tol", tol, "iterative residual tolerance");
  spectrum_cmd->add_option("--cluster-scale", cluster_scale,
                           "degeneracy clustering scale");
  spectrum_cmd->add_option("--dense-limit", dense_limit,
                           "dense dimension limit");

  CLI::App* bound_cmd =
      app.add_subcommand("bound-check", "fidelity/spectrum inequality sweeps");
  add_common(bound_cmd, bound_opts, "--graph");
  std::size_t locality = 2, samples = 10;
  double bound_tol = kDefaultBoundTol;
  bound_cmd->add_option("--locality", locality, "Hamiltonian locality d");
  bound_cmd->add_option("--samples", samples, "number of random Hamiltonians");
  bound_cmd->add_option("--tol", bound_tol, "inequality slack");

  CLI::App* gadget_cmd =
      app.add_subcommand("gadget", "two-body ancilla constructions");
  add_common(gadget_cmd, gadget_opts, "--target");
  std::string gadget_type = "auto", deltas_text = "0.2,0.1,0.05",
              gadget_mode = "spectral";
  bool raw_scale = false;
  gadget_cmd->add_option("--type", gadget_type,
                         "auto, linear, generic or honeycomb")
      ->check(CLI::IsMember({"auto", "linear", "generic", "honeycomb"}));
  gadget_cmd->add_option("--deltas", deltas_text, "comma-separated deltas");
  gadget_cmd->add_option("--mode", gadget_mode, "spectral or structural")
      ->check(CLI::IsMember({"spectral", "structural"}));
  gadget_cmd->add_flag("--raw", raw_scale,
                       "keep the printed prefactor instead of normalizing");

  CLI::App* orbit_cmd =
      app.add_subcommand("orbit", "local-complementation orbit minimum degree");
  add_common(orbit_cmd, orbit_opts, "--graph");
  std::size_t budget = 1'000'000;
  orbit_cmd->add_option("--budget", budget, "visited-graph budget");

  CLI::App* state_cmd = app.add_subcommand("state", "graph state amplitudes");
  add_common(state_cmd, state_opts, "--graph");
  std::size_t qubit_limit = kDefaultStateQubitLimit;
  state_cmd->add_option("--limit", qubit_limit, "dense qubit limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(delta_cmd)) return run_delta(delta_opts);
    if (app.got_subcommand(eta_cmd)) return run_eta(eta_opts);
    if (app.got_subcommand(spectrum_cmd))
      return run_spectrum(spectrum_opts, which, truncate_d, spectrum_mode,
                          lowest_k, tol, cluster_scale, dense_limit);
    if (app.got_subcommand(bound_cmd))
      return run_bound_check(bound_opts, locality, samples, bound_tol);
    if (app.got_subcommand(gadget_cmd))
      return run_gadget(gadget_opts, gadget_type, deltas_text, gadget_mode,
                        raw_scale);
    if (app.got_subcommand(orbit_cmd)) return run_orbit(orbit_opts, budget);
    if (app.got_subcommand(state_cmd)) return run_state(state_opts, qubit_limit);
  } catch (const SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver did not converge: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
