#include "gstate/hamiltonian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "gstate/errors.hpp"

namespace gstate {

namespace {

constexpr std::complex<double> kPhases[4] = {
    {1, 0}, {0, 1}, {-1, 0}, {0, -1}};

struct MaskKey {
  std::vector<gf2::Word> words;
  bool operator==(const MaskKey&) const = default;
};

struct MaskKeyHash {
  std::size_t operator()(const MaskKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (gf2::Word w : k.words) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }
};

MaskKey key_of(const PauliOperator& op) {
  MaskKey k;
  auto xw = op.x_bits().words();
  auto zw = op.z_bits().words();
  k.words.assign(xw.begin(), xw.end());
  k.words.insert(k.words.end(), zw.begin(), zw.end());
  return k;
}

double norm_of(const StateVector& v) {
  double acc = 0;
  for (const auto& a : v) acc += std::norm(a);
  return std::sqrt(acc);
}

void fix_global_phase_largest(StateVector& v) {
  std::size_t best = 0;
  double best_mag = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::norm(v[i]) > best_mag) {
      best_mag = std::norm(v[i]);
      best = i;
    }
  if (best_mag == 0) return;
  std::complex<double> rot = std::conj(v[best]) / std::abs(v[best]);
  for (auto& a : v) a *= rot;
}

}  // namespace

std::size_t PauliSumHamiltonian::locality() const {
  std::size_t w = 0;
  for (const auto& t : terms_) w = std::max(w, t.op.weight());
  return w;
}

void PauliSumHamiltonian::add_term(double coeff, const PauliOperator& op) {
  if (op.qubits() != n_)
    throw std::invalid_argument("add_term: qubit count mismatch");
  if (!std::isfinite(coeff))
    throw std::invalid_argument("add_term: coefficient must be finite");
  double signed_coeff = coeff * op.sign();  // throws if not Hermitian
  for (auto& t : terms_) {
    if (PauliOperator::same_masks(t.op, op)) {
      t.coeff += signed_coeff;
      return;
    }
  }
  terms_.push_back({signed_coeff, op.unsigned_form()});
}

void PauliSumHamiltonian::prune(double threshold) {
  std::erase_if(terms_,
                [&](const PauliTerm& t) { return std::abs(t.coeff) <= threshold; });
}

PauliSumHamiltonian& PauliSumHamiltonian::operator*=(double scale) {
  for (auto& t : terms_) t.coeff *= scale;
  return *this;
}

PauliSumHamiltonian& PauliSumHamiltonian::operator+=(
    const PauliSumHamiltonian& other) {
  if (other.n_ != n_) throw std::invalid_argument("operator+=: size mismatch");
  for (const auto& t : other.terms_) add_term(t.coeff, t.op);
  return *this;
}

StateVector matvec(const PauliSumHamiltonian& h, const StateVector& v) {
  const std::size_t n = h.qubits();
  if (n > 30) throw SizeLimitError("matvec: state space too large");
  const std::size_t dim = std::size_t{1} << n;
  if (v.size() != dim) throw std::invalid_argument("matvec: dimension mismatch");

  StateVector out(dim, {0, 0});
  for (const auto& t : h.terms()) {
    const gf2::Word xm = n ? t.op.x_bits().words()[0] : 0;
    const gf2::Word zm = n ? t.op.z_bits().words()[0] : 0;
    const std::complex<double> scale =
        t.coeff * kPhases[t.op.phase_exp() & 3];
    for (std::size_t idx = 0; idx < dim; ++idx) {
      double sz = (std::popcount(zm & idx) & 1u) ? -1.0 : 1.0;
      out[idx ^ xm] += scale * sz * v[idx];
    }
  }
  return out;
}

double frobenius_energy_norm(const PauliSumHamiltonian& h) {
  double sum_sq = 0;
  for (const auto& t : h.terms()) sum_sq += t.coeff * t.coeff;
  return std::sqrt(std::ldexp(sum_sq, static_cast<int>(h.qubits())));
}

PauliSumHamiltonian canonical_hamiltonian(const Graph& g,
                                          bool minimal_weight_generators) {
  PauliSumHamiltonian h(g.order());
  if (minimal_weight_generators) {
    for (const auto& gen : minimal_weight_generating_set(g)) h.add_term(-1.0, gen);
  } else {
    for (const auto& gen : graph_stabilizer(g).generators) h.add_term(-1.0, gen);
  }
  return h;
}

PauliSumHamiltonian truncated_stabilizer_hamiltonian(const Graph& g,
                                                     std::size_t d) {
  StabilizerGroup s = graph_stabilizer(g);
  auto elements = detail::weight_limited_elements(s, d);
  if (elements.empty())
    throw std::invalid_argument(
        "truncated_stabilizer_hamiltonian: no stabilizer elements of weight <= " +
        std::to_string(d));
  PauliSumHamiltonian h(g.order());
  for (const auto& e : elements) h.add_term(-1.0, e);
  return h;
}

StateVector graph_state_vector(const Graph& g, std::size_t qubit_limit) {
  const std::size_t n = g.order();
  if (n > qubit_limit || n > 30)
    throw SizeLimitError("graph_state_vector: n exceeds dense limit");
  const std::size_t dim = std::size_t{1} << n;
  auto edges = g.edges();
  std::vector<gf2::Word> edge_masks;
  edge_masks.reserve(edges.size());
  for (auto [a, b] : edges)
    edge_masks.push_back((gf2::Word{1} << a) | (gf2::Word{1} << b));

  const double amp = std::ldexp(1.0, -static_cast<int>(n) / 2) *
                     ((n % 2) ? 1.0 / std::sqrt(2.0) : 1.0);
  StateVector v(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    int parity = 0;
    for (gf2::Word m : edge_masks) parity ^= ((idx & m) == m);
    v[idx] = parity ? -amp : amp;
  }
  return v;
}

StateVector stabilizer_state_vector(const StabilizerGroup& s,
                                    std::size_t qubit_limit) {
  const std::size_t n = s.n;
  if (n > qubit_limit || n > 30)
    throw SizeLimitError("stabilizer_state_vector: n exceeds dense limit");
  const std::size_t dim = std::size_t{1} << n;

  for (std::size_t seed = 0; seed < dim; ++seed) {
    StateVector v(dim, {0, 0});
    v[seed] = 1.0;
    for (const auto& g : s.generators) {
      StateVector gv = g.apply(v);
      for (std::size_t i = 0; i < dim; ++i) v[i] = 0.5 * (v[i] + gv[i]);
    }
    double norm = norm_of(v);
    if (norm < 1e-9) continue;
    for (auto& a : v) a /= norm;
    // Deterministic global phase: first nonzero amplitude real positive.
    for (std::size_t i = 0; i < dim; ++i) {
      if (std::abs(v[i]) > 1e-9) {
        std::complex<double> rot = std::conj(v[i]) / std::abs(v[i]);
        for (auto& a : v) a *= rot;
        break;
      }
    }
    return v;
  }
  throw std::logic_error(
      "stabilizer_state_vector: projection annihilated every seed");
}

double fidelity(const StateVector& u, const StateVector& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("fidelity: dimension mismatch");
  if (std::abs(norm_of(u) - 1.0) > 1e-8 || std::abs(norm_of(v) - 1.0) > 1e-8)
    throw std::invalid_argument("fidelity: inputs must be unit vectors");
  std::complex<double> inner = 0;
  for (std::size_t i = 0; i < u.size(); ++i) inner += std::conj(u[i]) * v[i];
  return std::min(1.0, std::abs(inner));
}

namespace {

// Ground-cluster boundary: first ascending gap above tol ends the cluster.
std::size_t cluster_end(const std::vector<double>& energies, double tol) {
  std::size_t end = 1;
  while (end < energies.size() && energies[end] - energies[end - 1] <= tol)
    ++end;
  return end;
}

SpectrumReport dense_spectrum(const PauliSumHamiltonian& h,
                              const SpectrumOptions& options) {
  const std::size_t n = h.qubits();
  const std::size_t dim = std::size_t{1} << n;

  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) {
    const gf2::Word xm = n ? t.op.x_bits().words()[0] : 0;
    const gf2::Word zm = n ? t.op.z_bits().words()[0] : 0;
    const std::complex<double> scale = t.coeff * kPhases[t.op.phase_exp() & 3];
    for (std::size_t idx = 0; idx < dim; ++idx) {
      double sz = (std::popcount(zm & idx) & 1u) ? -1.0 : 1.0;
      mat(idx ^ xm, idx) += scale * sz;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  solver.compute(mat, options.want_ground_space ? Eigen::ComputeEigenvectors
                                                : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("dense eigensolver failed");

  SpectrumReport report;
  report.method = "dense";
  report.full = true;
  report.frobenius_norm = frobenius_energy_norm(h);
  report.cluster_tol = options.cluster_scale * std::max(1.0, report.frobenius_norm);
  report.energies.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + dim);
  std::size_t ground = cluster_end(report.energies, report.cluster_tol);
  report.ground_degeneracy = ground;
  report.gap = ground < dim ? report.energies[ground] - report.energies[0] : 0.0;
  if (options.want_ground_space) {
    for (std::size_t i = 0; i < ground; ++i) {
      StateVector v(dim);
      for (std::size_t j = 0; j < dim; ++j) v[j] = solver.eigenvectors()(j, i);
      fix_global_phase_largest(v);
      report.ground_space.push_back(std::move(v));
    }
  }
  return report;
}

// Lanczos with full reorthogonalization; converged eigenvectors are deflated
// and the recursion restarts until k pairs are out.
SpectrumReport lanczos_spectrum(const PauliSumHamiltonian& h,
                                const SpectrumOptions& options) {
  const std::size_t n = h.qubits();
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t k = std::min({options.lowest_k, std::size_t{64}, dim});
  const double norm_scale = std::max(frobenius_energy_norm(h), 1e-300);
  const double residual_tol = options.tol * norm_scale;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<StateVector> converged;
  std::vector<double> conv_energies;

  auto orthogonalize = [&](StateVector& v, const std::vector<StateVector>& basis) {
    for (const auto& b : basis) {
      std::complex<double> ip = 0;
      for (std::size_t i = 0; i < dim; ++i) ip += std::conj(b[i]) * v[i];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= ip * b[i];
    }
  };

  while (converged.size() < k) {
    // Fresh start vector orthogonal to everything already converged.
    StateVector v(dim);
    double vnorm = 0;
    for (int attempt = 0; attempt < 32; ++attempt) {
      for (auto& a : v) a = {gauss(rng), gauss(rng)};
      orthogonalize(v, converged);
      vnorm = norm_of(v);
      if (vnorm > 1e-8) break;
    }
    if (vnorm <= 1e-8)
      throw ConvergenceError("lanczos: no start vector outside converged span");
    for (auto& a : v) a /= vnorm;

    std::vector<StateVector> basis{v};
    std::vector<double> alpha, beta;
    bool found = false;

    for (std::size_t it = 0; it < options.max_iterations && !found; ++it) {
      StateVector w = matvec(h, basis.back());
      if (!beta.empty())
        for (std::size_t i = 0; i < dim; ++i)
          w[i] -= beta.back() * basis[basis.size() - 2][i];
      std::complex<double> a_ip = 0;
      for (std::size_t i = 0; i < dim; ++i)
        a_ip += std::conj(basis.back()[i]) * w[i];
      alpha.push_back(a_ip.real());
      for (std::size_t i = 0; i < dim; ++i) w[i] -= alpha.back() * basis.back()[i];
      // Full reorthogonalization, converged vectors included.
      orthogonalize(w, basis);
      orthogonalize(w, converged);
      orthogonalize(w, basis);

      const std::size_t m = alpha.size();
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
      for (std::size_t i = 0; i < m; ++i) {
        tri(i, i) = alpha[i];
        if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri_solver(tri);
      const double theta = tri_solver.eigenvalues()(0);
      const double wnorm = norm_of(w);
      const double ritz_residual =
          wnorm * std::abs(tri_solver.eigenvectors()(m - 1, 0));
      const bool exhausted =
          wnorm <= 1e-13 * norm_scale || m + converged.size() >= dim;

      if (ritz_residual <= residual_tol || exhausted) {
        StateVector ritz(dim, {0, 0});
        for (std::size_t j = 0; j < m; ++j) {
          const double c = tri_solver.eigenvectors()(j, 0);
          for (std::size_t i = 0; i < dim; ++i) ritz[i] += c * basis[j][i];
        }
        orthogonalize(ritz, converged);
        double rnorm = norm_of(ritz);
        if (rnorm <= 1e-10)
          throw ConvergenceError("lanczos: degenerate ritz vector collapsed");
        for (auto& a : ritz) a /= rnorm;
        StateVector hv = matvec(h, ritz);
        double res = 0;
        for (std::size_t i = 0; i < dim; ++i)
          res += std::norm(hv[i] - theta * ritz[i]);
        res = std::sqrt(res);
        if (res > residual_tol && !exhausted)
          throw ConvergenceError("lanczos: ritz residual " + std::to_string(res) +
                                 " above tolerance");
        fix_global_phase_largest(ritz);
        converged.push_back(std::move(ritz));
        conv_energies.push_back(theta);
        found = true;
      } else {
        beta.push_back(wnorm);
        for (auto& a : w) a /= wnorm;
        basis.push_back(std::move(w));
      }
    }
    if (!found)
      throw ConvergenceError("lanczos: eigenpair " +
                             std::to_string(converged.size()) +
                             " did not converge in " +
                             std::to_string(options.max_iterations) +
                             " iterations");
  }

  std::vector<std::size_t> order(converged.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return conv_energies[a] < conv_energies[b];
  });

  SpectrumReport report;
  report.method = "iterative";
  report.full = false;
  report.frobenius_norm = frobenius_energy_norm(h);
  report.cluster_tol = options.cluster_scale * std::max(1.0, report.frobenius_norm);
  for (std::size_t i : order) report.energies.push_back(conv_energies[i]);
  std::size_t ground = cluster_end(report.energies, report.cluster_tol);
  report.ground_degeneracy = ground;
  report.gap = ground < report.energies.size()
                   ? report.energies[ground] - report.energies[0]
                   : 0.0;
  if (options.want_ground_space)
    for (std::size_t i = 0; i < ground; ++i)
      report.ground_space.push_back(converged[order[i]]);
  return report;
}

// Chebyshev-filtered block subspace iteration with Rayleigh-Ritz. Geared to
// spectra whose lowest eigenvalues form a tight cluster far below the rest
// (penalty-dominated Hamiltonians), where single-vector Lanczos stalls on
// the intra-cluster structure. The block must span the whole cluster.
SpectrumReport filtered_block_spectrum(const PauliSumHamiltonian& h,
                                       const SpectrumOptions& options) {
  const std::size_t n = h.qubits();
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t block = std::min(options.block_size, dim);
  const std::size_t k = std::min({options.lowest_k, std::size_t{64}, block});
  const double fro_norm = frobenius_energy_norm(h);
  const double residual_tol = options.tol * std::max(fro_norm, 1e-300);

  // Rigorous spectral enclosure: |lambda| <= sum |h_sigma|.
  double one_norm = 0;
  for (const auto& t : h.terms()) one_norm += std::abs(t.coeff);
  const double upper = one_norm + 1e-12 + 1e-6 * one_norm;

  auto apply_h = [&](const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out) {
    StateVector v(dim);
    for (Eigen::Index c = 0; c < in.cols(); ++c) {
      for (std::size_t i = 0; i < dim; ++i) v[i] = in(i, c);
      StateVector hv = matvec(h, v);
      for (std::size_t i = 0; i < dim; ++i) out(i, c) = hv[i];
    }
  };

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd basis(dim, block);
  for (std::size_t c = 0; c < block; ++c)
    for (std::size_t i = 0; i < dim; ++i)
      basis(i, c) = std::complex<double>(gauss(rng), gauss(rng));

  const int filter_degree = 30;
  const std::size_t max_outer = 80;
  Eigen::VectorXd ritz;
  Eigen::VectorXd residuals;
  double filter_edge = upper;  // first pass filters nothing selectively

  for (std::size_t outer = 0; outer < max_outer; ++outer) {
    // Orthonormalize.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(basis);
    basis = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, block);

    // Rayleigh-Ritz on the current subspace.
    Eigen::MatrixXcd hb(dim, block);
    apply_h(basis, hb);
    Eigen::MatrixXcd small = basis.adjoint() * hb;
    small = 0.5 * (small + small.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> small_solver(small);
    basis = (basis * small_solver.eigenvectors()).eval();
    hb = (hb * small_solver.eigenvectors()).eval();
    ritz = small_solver.eigenvalues();

    residuals.resize(k);
    bool done = true;
    for (std::size_t i = 0; i < k; ++i) {
      residuals(i) = (hb.col(i) - ritz(i) * basis.col(i)).norm();
      if (residuals(i) > residual_tol) done = false;
    }
    if (done) break;
    if (outer + 1 == max_outer)
      throw ConvergenceError(
          "filtered block solver: residual " +
          std::to_string(residuals.maxCoeff()) + " above tolerance " +
          std::to_string(residual_tol));

    // Chebyshev filter on [a, upper]: amplifies everything below the
    // current Ritz ceiling relative to the rest of the spectrum.
    double a = ritz(block - 1);
    if (a >= upper - 1e-30) a = 0.5 * (ritz(0) + upper);
    const double center = 0.5 * (upper + a);
    const double half = 0.5 * (upper - a);
    Eigen::MatrixXcd prev = basis;
    Eigen::MatrixXcd cur(dim, block);
    apply_h(prev, cur);
    cur = ((cur - center * prev) / half).eval();
    for (int deg = 2; deg <= filter_degree; ++deg) {
      Eigen::MatrixXcd next(dim, block);
      apply_h(cur, next);
      next = ((2.0 / half) * (next - center * cur) - prev).eval();
      prev = std::move(cur);
      cur = std::move(next);
    }
    basis = std::move(cur);
    filter_edge = a;
  }
  (void)filter_edge;

  SpectrumReport report;
  report.method = "iterative";
  report.full = false;
  report.frobenius_norm = fro_norm;
  report.cluster_tol = options.cluster_scale * std::max(1.0, fro_norm);
  for (std::size_t i = 0; i < k; ++i) report.energies.push_back(ritz(i));
  std::size_t ground = cluster_end(report.energies, report.cluster_tol);
  report.ground_degeneracy = ground;
  report.gap = ground < report.energies.size()
                   ? report.energies[ground] - report.energies[0]
                   : 0.0;
  if (options.want_ground_space) {
    for (std::size_t i = 0; i < ground; ++i) {
      StateVector v(dim);
      for (std::size_t j = 0; j < dim; ++j) v[j] = basis(j, i);
      fix_global_phase_largest(v);
      report.ground_space.push_back(std::move(v));
    }
  }
  return report;
}

}  // namespace

SpectrumReport spectrum(const PauliSumHamiltonian& h,
                        const SpectrumOptions& options) {
  const std::size_t n = h.qubits();
  if (n > 30) throw SizeLimitError("spectrum: state space too large");
  const std::size_t dim = std::size_t{1} << n;
  if (options.mode == SpectrumMode::kFull) {
    if (dim > options.dense_dim_limit)
      throw SizeLimitError("spectrum: dimension " + std::to_string(dim) +
                           " exceeds dense limit " +
                           std::to_string(options.dense_dim_limit));
    return dense_spectrum(h, options);
  }
  if (options.block_size > 0) return filtered_block_spectrum(h, options);
  return lanczos_spectrum(h, options);
}

}  // namespace gstate
