#include "gstate/gadget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gstate/errors.hpp"
#include "gstate/stabilizer.hpp"

namespace gstate {

namespace {

PauliOperator one(std::size_t n, std::size_t q, char letter) {
  return PauliOperator::single(n, q, letter);
}

PauliOperator two(std::size_t n, std::size_t q1, char l1, std::size_t q2,
                  char l2) {
  return multiply(PauliOperator::single(n, q1, l1),
                  PauliOperator::single(n, q2, l2));
}

void audit_two_body(const PauliSumHamiltonian& h) {
  for (const auto& t : h.terms())
    if (t.op.weight() > 2)
      throw std::logic_error("gadget: emitted a term of weight " +
                             std::to_string(t.op.weight()));
}

double dynamic_range(const PauliSumHamiltonian& h) {
  double lo = 0, hi = 0;
  bool first = true;
  for (const auto& t : h.terms()) {
    double a = std::abs(t.coeff);
    if (a == 0) continue;
    if (first) {
      lo = hi = a;
      first = false;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  return first ? 1.0 : hi / lo;
}

/// sqrt(<target| rho_sys |target>) with the system on the low index bits.
double reduced_fidelity(const StateVector& full, const StateVector& target,
                        std::size_t system_qubits) {
  const std::size_t sys_dim = std::size_t{1} << system_qubits;
  if (target.size() != sys_dim)
    throw std::invalid_argument("reduced_fidelity: target dimension mismatch");
  const std::size_t anc_dim = full.size() / sys_dim;
  double acc = 0;
  for (std::size_t a = 0; a < anc_dim; ++a) {
    std::complex<double> inner = 0;
    const std::size_t base = a * sys_dim;
    for (std::size_t s = 0; s < sys_dim; ++s)
      inner += std::conj(target[s]) * full[base + s];
    acc += std::norm(inner);
  }
  return std::min(1.0, std::sqrt(acc));
}

void evaluate_spectral(GadgetResult& result, const GadgetOptions& options) {
  if (!options.spectral) return;
  if (result.layout.total_qubits > options.spectral_qubit_limit)
    throw SizeLimitError("gadget: " +
                         std::to_string(result.layout.total_qubits) +
                         " qubits exceed the spectral limit");
  // The low-energy sector holds 2 states per mediating triple and the
  // full system space; the filtered block solver needs to span it.
  std::size_t triples = 0;
  for (const auto& group : result.layout.ancilla_groups) {
    if (group.size() == 3) triples += 1;
    if (group.size() == 7) triples += 2;
  }
  const std::size_t block_exp = result.layout.system_qubits + triples;
  if (block_exp > 11)
    throw SizeLimitError("gadget: low-energy sector too large for spectra");

  SpectrumOptions spec_options;
  spec_options.mode = SpectrumMode::kLowest;
  spec_options.lowest_k = options.lowest_k;
  spec_options.tol = options.tol;
  spec_options.seed = options.seed;
  spec_options.block_size = std::size_t{1} << block_exp;
  SpectrumReport spec = spectrum(result.hamiltonian, spec_options);

  StateVector target = graph_state_vector(result.target);
  result.spectral = true;
  result.ground_energy = spec.energies[0];
  result.relative_gap =
      spec.frobenius_norm > 0 ? spec.gap / spec.frobenius_norm : 0.0;
  result.fidelity =
      reduced_fidelity(spec.ground_space[0], target, result.layout.system_qubits);
  if (spec.ground_degeneracy > 1)
    result.warnings.push_back("ground level degenerate within clustering tol");
}

}  // namespace

PauliSumHamiltonian ancilla_triple_penalty(double delta) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  const double k = std::pow(delta, -3.0) / 4.0;
  PauliSumHamiltonian h(3);
  h.add_term(-k, two(3, 0, 'Z', 1, 'Z'));
  h.add_term(-k, two(3, 0, 'Z', 2, 'Z'));
  h.add_term(-k, two(3, 1, 'Z', 2, 'Z'));
  h.add_term(3 * k, PauliOperator::identity(3));
  return h;
}

GadgetResult linear_cluster_gadget(std::size_t n, double delta,
                                   const GadgetOptions& options) {
  if (n < 3) throw std::invalid_argument("linear_cluster_gadget: n >= 3");
  if (delta <= 0)
    throw std::invalid_argument("linear_cluster_gadget: delta must be positive");

  GadgetResult result;
  result.target = cycle_graph(n);
  result.layout.system_qubits = n;
  result.layout.delta = delta;
  result.layout.total_qubits = 4 * n;
  for (std::size_t i = 0; i < n; ++i)
    result.layout.ancilla_groups.push_back(
        {n + 3 * i, n + 3 * i + 1, n + 3 * i + 2});
  if (delta > 0.5)
    result.warnings.push_back("delta > 0.5: outside the perturbative regime");

  const double nd = static_cast<double>(n);
  const double n3 = nd * nd * nd;
  const double n6 = n3 * n3;
  const double n9 = n6 * n3;
  const double d1 = 1.0 / delta;
  const double d2 = d1 * d1;
  const double d3 = d2 * d1;
  // Positive overall prefactor keeps the aligned-ancilla sector lowest so
  // the effective three-body terms carry the -1 coefficients of the target.
  const double prefactor = options.normalized ? 1.0 : n9 / 6.0;
  result.scale_factor = options.normalized ? 6.0 / n9 : 1.0;

  const std::size_t total = 4 * n;
  PauliSumHamiltonian h(total);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const std::size_t next = (i + 1) % n;
    const std::size_t a1 = n + 3 * i, a2 = a1 + 1, a3 = a1 + 2;

    // Ancilla triple penalty.
    h.add_term(-prefactor * d3 / 4, two(total, a1, 'Z', a2, 'Z'));
    h.add_term(-prefactor * d3 / 4, two(total, a1, 'Z', a3, 'Z'));
    h.add_term(-prefactor * d3 / 4, two(total, a2, 'Z', a3, 'Z'));
    h.add_term(prefactor * 3 * d3 / 4, PauliOperator::identity(total));

    // Low-order correction block (cancels everything in the neighborhood
    // product except the three-body term).
    h.add_term(prefactor * 48 / n9, PauliOperator::identity(total));
    h.add_term(prefactor * 24 / n9, one(total, i, 'X'));
    h.add_term(prefactor * 24 / n9, one(total, next, 'Z'));
    h.add_term(prefactor * 24 / n9, one(total, prev, 'Z'));
    h.add_term(prefactor * 12 / n9, two(total, i, 'X', next, 'Z'));
    h.add_term(prefactor * 12 / n9, two(total, i, 'X', prev, 'Z'));
    h.add_term(prefactor * 12 / n9, two(total, prev, 'Z', next, 'Z'));

    // Quadratic compensation of the couplings.
    h.add_term(prefactor * d1 * 15 / n6, PauliOperator::identity(total));
    h.add_term(prefactor * d1 * 4 / n6, one(total, prev, 'Z'));
    h.add_term(prefactor * d1 * 4 / n6, one(total, i, 'X'));
    h.add_term(prefactor * d1 * 4 / n6, one(total, next, 'Z'));

    // Couplings between neighborhood operators and ancilla flips.
    h.add_term(-prefactor * d2 * 2 / n3, one(total, a1, 'X'));
    h.add_term(-prefactor * d2 * 2 / n3, one(total, a2, 'X'));
    h.add_term(-prefactor * d2 * 2 / n3, one(total, a3, 'X'));
    h.add_term(-prefactor * d2 / n3, two(total, prev, 'Z', a1, 'X'));
    h.add_term(-prefactor * d2 / n3, two(total, i, 'X', a2, 'X'));
    h.add_term(-prefactor * d2 / n3, two(total, next, 'Z', a3, 'X'));
  }
  h.prune(0.0);
  audit_two_body(h);
  result.hamiltonian = std::move(h);
  result.coefficient_dynamic_range = dynamic_range(result.hamiltonian);
  evaluate_spectral(result, options);
  return result;
}

SplitResult split_four_to_three(
    const PauliSumHamiltonian& h4, double delta, SplitAncillaMode mode,
    const std::vector<std::array<std::size_t, 2>>& pairing) {
  if (delta <= 0)
    throw std::invalid_argument("split_four_to_three: delta must be positive");
  const std::size_t n = h4.qubits();

  std::vector<std::size_t> heavy_terms;
  for (std::size_t t = 0; t < h4.terms().size(); ++t) {
    std::size_t w = h4.terms()[t].op.weight();
    if (w > 4)
      throw std::invalid_argument("split_four_to_three: term weight exceeds 4");
    if (w == 4) heavy_terms.push_back(t);
  }
  if (!pairing.empty() && pairing.size() != heavy_terms.size())
    throw std::invalid_argument(
        "split_four_to_three: pairing size must match weight-4 term count");

  auto owner_of = [&](const PauliTerm& term) {
    // The X-bearing qubit when unique, else the lowest acting one.
    std::size_t owner = n;
    std::size_t x_count = 0;
    std::size_t lowest = n;
    for (std::size_t q = 0; q < n; ++q) {
      if (!term.op.x_bits().get(q) && !term.op.z_bits().get(q)) continue;
      if (lowest == n) lowest = q;
      if (term.op.x_bits().get(q) && !term.op.z_bits().get(q)) {
        owner = q;
        ++x_count;
      }
    }
    return x_count == 1 ? owner : lowest;
  };

  // Ancilla indices: dense per-term order, or dense owner order in the
  // per-system-qubit convention (each owner may carry one term only).
  std::vector<std::size_t> ancilla_of(heavy_terms.size());
  if (mode == SplitAncillaMode::kPerSystemQubit) {
    std::vector<std::size_t> owners;
    for (std::size_t t : heavy_terms) owners.push_back(owner_of(h4.terms()[t]));
    std::vector<std::size_t> sorted = owners;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument(
          "split_four_to_three: two weight-4 terms share an owner qubit");
    for (std::size_t i = 0; i < owners.size(); ++i) {
      std::size_t rank = std::lower_bound(sorted.begin(), sorted.end(),
                                          owners[i]) -
                         sorted.begin();
      ancilla_of[i] = n + rank;
    }
  } else {
    for (std::size_t i = 0; i < heavy_terms.size(); ++i) ancilla_of[i] = n + i;
  }

  SplitResult out;
  out.layout.system_qubits = n;
  out.layout.delta = delta;
  const std::size_t total = n + heavy_terms.size();
  out.layout.total_qubits = total;
  PauliSumHamiltonian h3(total);

  auto promote = [&](const PauliOperator& op) {
    gf2::BitVec x(total), z(total);
    for (std::size_t q = 0; q < n; ++q) {
      x.set(q, op.x_bits().get(q));
      z.set(q, op.z_bits().get(q));
    }
    return PauliOperator::from_masks(std::move(x), std::move(z),
                                     op.phase_exp());
  };

  const double penalty = std::pow(delta, -2.0);
  std::size_t heavy_index = 0;
  for (std::size_t t = 0; t < h4.terms().size(); ++t) {
    const PauliTerm& term = h4.terms()[t];
    if (term.op.weight() <= 3) {
      h3.add_term(term.coeff, promote(term.op));
      continue;
    }

    std::vector<std::size_t> acting;
    for (std::size_t q = 0; q < n; ++q)
      if (term.op.x_bits().get(q) || term.op.z_bits().get(q))
        acting.push_back(q);

    std::array<std::size_t, 2> first_pair = {acting[0], acting[1]};
    if (!pairing.empty()) first_pair = pairing[heavy_index];

    const std::size_t ancilla = ancilla_of[heavy_index];
    out.layout.ancilla_groups.push_back({ancilla});
    ++heavy_index;

    // Halves of the term on disjoint supports.
    gf2::BitVec xa(total), za(total), xb(total), zb(total);
    for (std::size_t q : acting) {
      bool in_first = (q == first_pair[0] || q == first_pair[1]);
      (in_first ? xa : xb).set(q, term.op.x_bits().get(q));
      (in_first ? za : zb).set(q, term.op.z_bits().get(q));
    }
    PauliOperator half_a = PauliOperator::from_masks(xa, za, 0).unsigned_form();
    PauliOperator half_b = PauliOperator::from_masks(xb, zb, 0).unsigned_form();
    // c * A B with Paulis squaring to I: couple (A + B) X_w at strength
    // sqrt(|c| penalty / 2); the second-order term then lands on -|c| A B,
    // so a sign flip on one half realizes positive c.
    double coupling = std::sqrt(std::abs(term.coeff) * penalty / 2.0);
    double sign_a = term.coeff > 0 ? -1.0 : 1.0;

    PauliOperator flip = PauliOperator::single(total, ancilla, 'X');
    h3.add_term(sign_a * coupling, multiply(half_a, flip));
    h3.add_term(coupling, multiply(half_b, flip));
    // penalty |1><1| on the ancilla
    h3.add_term(penalty / 2, PauliOperator::identity(total));
    h3.add_term(-penalty / 2, PauliOperator::single(total, ancilla, 'Z'));
    // second-order identity compensation
    h3.add_term(std::abs(term.coeff), PauliOperator::identity(total));

    out.schedule.push_back({penalty, coupling});
  }
  h3.prune(0.0);
  out.hamiltonian = std::move(h3);
  if (out.hamiltonian.locality() > 3)
    throw std::logic_error("split_four_to_three: output locality above 3");
  return out;
}

HoneycombCoefficients HoneycombCoefficients::default_schedule(double delta) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  const double inv = 1.0 / delta;
  // Scale hierarchy: triangle penalty delta^-3, couplings delta^-2,
  // compensations delta^-1, constant offset per aligned triple pair.
  HoneycombCoefficients c{};
  c.a = std::pow(inv, 3.0) / 4.0;
  c.b = 4.0 * delta;
  c.c = 4.0 * delta;
  c.d = 4.0 * delta * delta;
  c.e = 6.0;
  c.d1 = inv;
  c.d2 = inv;
  return c;
}

GadgetResult honeycomb_gadget(std::size_t cell_rows, std::size_t cell_cols,
                              double delta, const HoneycombCoefficients& coeffs,
                              const GadgetOptions& options) {
  if (delta <= 0)
    throw std::invalid_argument("honeycomb_gadget: delta must be positive");
  Graph target = honeycomb_graph(cell_rows, cell_cols, true);
  const std::size_t n = target.order();
  for (std::size_t v = 0; v < n; ++v)
    if (target.degree(v) != 3)
      throw std::invalid_argument(
          "honeycomb_gadget: lattice must be 3-regular");

  GadgetResult result;
  result.target = target;
  result.layout.system_qubits = n;
  result.layout.delta = delta;
  const std::size_t total = 8 * n;  // 7 ancillas per site
  result.layout.total_qubits = total;
  if (delta > 0.5)
    result.warnings.push_back("delta > 0.5: outside the perturbative regime");

  PauliSumHamiltonian h(total);
  const double a = coeffs.a;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> nb;
    for (std::size_t v = 0; v < n; ++v)
      if (target.edge(i, v)) nb.push_back(v);
    const std::size_t ia = nb[0], ib = nb[1], ic = nb[2];
    const std::size_t base = n + 7 * i;
    const std::size_t i1 = base, i2 = base + 1, i3 = base + 2, i4 = base + 3,
                      i5 = base + 4, i6 = base + 5, i7 = base + 6;
    result.layout.ancilla_groups.push_back({i1, i2, i3, i4, i5, i6, i7});

    // Two ancilla triangles.
    h.add_term(-a, two(total, i1, 'Z', i2, 'Z'));
    h.add_term(-a, two(total, i1, 'Z', i3, 'Z'));
    h.add_term(-a, two(total, i2, 'Z', i3, 'Z'));
    h.add_term(-a, two(total, i4, 'Z', i5, 'Z'));
    h.add_term(-a, two(total, i4, 'Z', i6, 'Z'));
    h.add_term(-a, two(total, i5, 'Z', i6, 'Z'));

    // System/ancilla triangles sharing the seventh ancilla.
    h.add_term(-a * coeffs.b, two(total, i, 'X', ia, 'Z'));
    h.add_term(-a * coeffs.b, two(total, i, 'X', i7, 'X'));
    h.add_term(-a * coeffs.b, two(total, ia, 'Z', i7, 'X'));
    h.add_term(-a * coeffs.b, two(total, ia, 'Z', ib, 'Z'));
    h.add_term(-a * coeffs.b, two(total, ib, 'Z', i7, 'X'));
    h.add_term(-a * coeffs.b, two(total, ic, 'Z', i7, 'X'));

    // Couplings linking the triangles.
    h.add_term(-a * coeffs.c, two(total, i, 'X', i1, 'X'));
    h.add_term(-a * coeffs.c, two(total, ia, 'Z', i2, 'X'));
    h.add_term(-a * coeffs.c, two(total, i3, 'X', i7, 'X'));
    h.add_term(-a * coeffs.c, two(total, ib, 'Z', i4, 'X'));
    h.add_term(-a * coeffs.c, two(total, ic, 'Z', i5, 'X'));
    h.add_term(-a * coeffs.c, two(total, i6, 'X', i7, 'X'));

    // Single-qubit block, the |1><1| projector split into I and Z.
    h.add_term(-a * coeffs.d, one(total, i, 'X'));
    h.add_term(-a * coeffs.d, one(total, ia, 'Z'));
    h.add_term(-a * coeffs.d, one(total, ib, 'Z'));
    h.add_term(-a * coeffs.d, one(total, ic, 'Z'));
    h.add_term(-a * coeffs.d * 2, one(total, i7, 'Z'));
    for (std::size_t j : {i1, i2, i3, i4, i5, i6})
      h.add_term(-a * coeffs.d * coeffs.d1, one(total, j, 'X'));
    h.add_term(-a * coeffs.d * coeffs.d2 / 2, PauliOperator::identity(total));
    h.add_term(a * coeffs.d * coeffs.d2 / 2, one(total, i7, 'Z'));

    h.add_term(-a * coeffs.e, PauliOperator::identity(total));
  }
  h.prune(0.0);
  audit_two_body(h);
  result.hamiltonian = std::move(h);
  result.coefficient_dynamic_range = dynamic_range(result.hamiltonian);

  if (options.spectral &&
      result.layout.total_qubits <= options.spectral_qubit_limit) {
    evaluate_spectral(result, options);
  } else if (options.spectral) {
    throw SizeLimitError("honeycomb_gadget: spectral mode needs " +
                         std::to_string(result.layout.total_qubits) +
                         " qubits");
  } else {
    result.warnings.push_back(
        "spectral evaluation skipped: " +
        std::to_string(result.layout.total_qubits) + " qubits");
  }
  return result;
}

GadgetResult generic_gadget(const Graph& g, double delta,
                            const GadgetOptions& options) {
  if (delta <= 0)
    throw std::invalid_argument("generic_gadget: delta must be positive");
  if (!g.connected())
    throw std::invalid_argument("generic_gadget: graph must be connected");
  const std::size_t n = g.order();

  std::vector<PauliOperator> gens = minimal_weight_generating_set(g);
  PauliSumHamiltonian target_h(n);
  for (const auto& gen : gens) target_h.add_term(-1.0, gen);

  GadgetResult result;
  result.target = g;
  result.layout.system_qubits = n;
  result.layout.delta = delta;
  if (delta > 0.5)
    result.warnings.push_back("delta > 0.5: outside the perturbative regime");

  // Halve supports until every term is at most 3-body.
  PauliSumHamiltonian current = target_h;
  while (current.locality() > 3) {
    const std::size_t before = current.qubits();
    std::size_t extra = 0;
    for (const auto& t : current.terms())
      if (t.op.weight() > 3) ++extra;
    const std::size_t total = before + extra;

    PauliSumHamiltonian next(total);
    auto widen = [&](const PauliOperator& op) {
      gf2::BitVec x(total), z(total);
      for (std::size_t q = 0; q < before; ++q) {
        x.set(q, op.x_bits().get(q));
        z.set(q, op.z_bits().get(q));
      }
      return PauliOperator::from_masks(std::move(x), std::move(z),
                                       op.phase_exp());
    };
    const double penalty = std::pow(delta, -2.0);
    std::size_t ancilla = before;
    for (const auto& t : current.terms()) {
      if (t.op.weight() <= 3) {
        next.add_term(t.coeff, widen(t.op));
        continue;
      }
      std::vector<std::size_t> acting;
      for (std::size_t q = 0; q < before; ++q)
        if (t.op.x_bits().get(q) || t.op.z_bits().get(q)) acting.push_back(q);
      const std::size_t half = (acting.size() + 1) / 2;
      gf2::BitVec xa(total), za(total), xb(total), zb(total);
      for (std::size_t k = 0; k < acting.size(); ++k) {
        std::size_t q = acting[k];
        (k < half ? xa : xb).set(q, t.op.x_bits().get(q));
        (k < half ? za : zb).set(q, t.op.z_bits().get(q));
      }
      PauliOperator half_a =
          PauliOperator::from_masks(xa, za, 0).unsigned_form();
      PauliOperator half_b =
          PauliOperator::from_masks(xb, zb, 0).unsigned_form();
      double coupling = std::sqrt(std::abs(t.coeff) * penalty / 2.0);
      double sign_a = t.coeff > 0 ? -1.0 : 1.0;
      PauliOperator flip = PauliOperator::single(total, ancilla, 'X');
      next.add_term(sign_a * coupling, multiply(half_a, flip));
      next.add_term(coupling, multiply(half_b, flip));
      next.add_term(penalty / 2, PauliOperator::identity(total));
      next.add_term(-penalty / 2, PauliOperator::single(total, ancilla, 'Z'));
      next.add_term(std::abs(t.coeff), PauliOperator::identity(total));
      result.layout.ancilla_groups.push_back({ancilla});
      ++ancilla;
    }
    next.prune(0.0);
    current = std::move(next);
  }

  // Three-ancilla reduction of the remaining 3-body terms.
  const std::size_t mid = current.qubits();
  std::vector<std::size_t> cubic;
  for (std::size_t t = 0; t < current.terms().size(); ++t)
    if (current.terms()[t].op.weight() == 3) cubic.push_back(t);

  const std::size_t total = mid + 3 * cubic.size();
  result.layout.total_qubits = total;
  const double m = std::max<double>(static_cast<double>(cubic.size()), 1.0);
  const double m3 = m * m * m;
  const double m6 = m3 * m3;
  const double m9 = m6 * m3;
  const double d1 = 1.0 / delta, d2 = d1 * d1, d3 = d2 * d1;
  const double prefactor = options.normalized ? 1.0 : m9 / 6.0;
  result.scale_factor = options.normalized ? 6.0 / m9 : 1.0;
  // The whole Hamiltonian is scaled by scale_factor, so the pass-through
  // terms carry it explicitly while the mediated blocks absorb it into
  // prefactor = scale_factor * m^9/6.
  const double passthrough_scale = result.scale_factor;

  PauliSumHamiltonian h(total);
  auto widen = [&](const PauliOperator& op) {
    gf2::BitVec x(total), z(total);
    for (std::size_t q = 0; q < mid; ++q) {
      x.set(q, op.x_bits().get(q));
      z.set(q, op.z_bits().get(q));
    }
    return PauliOperator::from_masks(std::move(x), std::move(z),
                                     op.phase_exp());
  };

  for (std::size_t t = 0; t < current.terms().size(); ++t) {
    const PauliTerm& term = current.terms()[t];
    if (term.op.weight() <= 2)
      h.add_term(passthrough_scale * term.coeff, widen(term.op));
  }

  for (std::size_t c = 0; c < cubic.size(); ++c) {
    const PauliTerm& term = current.terms()[cubic[c]];
    std::vector<std::size_t> acting;
    for (std::size_t q = 0; q < mid; ++q)
      if (term.op.x_bits().get(q) || term.op.z_bits().get(q))
        acting.push_back(q);

    // Single-qubit factors; disjoint supports make their product exactly
    // the stored canonical operator.
    std::array<PauliOperator, 3> factors = {
        PauliOperator::identity(total), PauliOperator::identity(total),
        PauliOperator::identity(total)};
    for (std::size_t k = 0; k < 3; ++k) {
      std::size_t q = acting[k];
      char letter = term.op.x_bits().get(q)
                        ? (term.op.z_bits().get(q) ? 'Y' : 'X')
                        : 'Z';
      factors[k] = PauliOperator::single(total, q, letter);
    }
    const double coeff = term.coeff;

    // Mediating operators (2I + eps P) w / m^3 with eps arranged so the
    // third-order product lands on +coeff * P1 P2 P3 under the -6 B1 B2 B3
    // slot.
    const double w = std::cbrt(std::abs(coeff));
    std::array<double, 3> eps = {coeff > 0 ? -1.0 : 1.0, 1.0, 1.0};

    const std::size_t a1 = mid + 3 * c, a2 = a1 + 1, a3 = a1 + 2;
    result.layout.ancilla_groups.push_back({a1, a2, a3});

    // Penalty triple.
    h.add_term(-prefactor * d3 / 4, two(total, a1, 'Z', a2, 'Z'));
    h.add_term(-prefactor * d3 / 4, two(total, a1, 'Z', a3, 'Z'));
    h.add_term(-prefactor * d3 / 4, two(total, a2, 'Z', a3, 'Z'));
    h.add_term(prefactor * 3 * d3 / 4, PauliOperator::identity(total));

    // Expansion of 6 B1 B2 B3 without its three-body part.
    const double w3 = w * w * w;
    h.add_term(prefactor * 6 * w3 * 8 / m9, PauliOperator::identity(total));
    for (std::size_t k = 0; k < 3; ++k)
      h.add_term(prefactor * 6 * w3 * 4 * eps[k] / m9, factors[k]);
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t l = k + 1; l < 3; ++l)
        h.add_term(prefactor * 6 * w3 * 2 * eps[k] * eps[l] / m9,
                   multiply(factors[k], factors[l]));

    // Quadratic compensation: B_j^2 = w^2 (5 I + 4 eps P_j) / m^6.
    for (std::size_t k = 0; k < 3; ++k) {
      h.add_term(prefactor * d1 * 5 * w * w / m6, PauliOperator::identity(total));
      h.add_term(prefactor * d1 * 4 * w * w * eps[k] / m6, factors[k]);
    }

    // Couplings to the ancilla flips.
    const std::array<std::size_t, 3> anc = {a1, a2, a3};
    for (std::size_t k = 0; k < 3; ++k) {
      h.add_term(-prefactor * d2 * 2 * w / m3, one(total, anc[k], 'X'));
      h.add_term(-prefactor * d2 * w * eps[k] / m3,
                 multiply(factors[k], one(total, anc[k], 'X')));
    }
  }
  h.prune(0.0);
  audit_two_body(h);
  result.hamiltonian = std::move(h);
  result.coefficient_dynamic_range = dynamic_range(result.hamiltonian);

  if (options.spectral &&
      result.layout.total_qubits <= options.spectral_qubit_limit) {
    evaluate_spectral(result, options);
  } else if (options.spectral) {
    throw SizeLimitError("generic_gadget: spectral mode needs " +
                         std::to_string(result.layout.total_qubits) +
                         " qubits");
  }
  return result;
}

SweepReport gadget_fidelity_sweep(
    const std::function<GadgetResult(double)>& builder,
    const std::vector<double>& deltas) {
  SweepReport report;
  for (double delta : deltas) {
    GadgetResult r = builder(delta);
    report.points.push_back({delta, r.fidelity, r.relative_gap,
                             r.coefficient_dynamic_range, r.ground_energy});
  }
  std::vector<SweepPoint> sorted = report.points;
  std::sort(sorted.begin(), sorted.end(),
            [](const SweepPoint& a, const SweepPoint& b) {
              return a.delta > b.delta;
            });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (!(sorted[i].fidelity > sorted[i - 1].fidelity))
      report.fidelity_increasing_as_delta_shrinks = false;
    if (!(sorted[i].dynamic_range > sorted[i - 1].dynamic_range))
      report.dynamic_range_increasing_as_delta_shrinks = false;
  }
  return report;
}

}  // namespace gstate
