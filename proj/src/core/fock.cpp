#include "core/fock.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace polab {

namespace {
constexpr cplx kI{0.0, 1.0};
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double result = 1.0;
  for (int i = 0; i < k; ++i) {
    result *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return result;
}

std::pair<int, int> FockBasis::modes(int idx) const {
  if (idx < 0 || idx >= dim()) fail_argument("flat index outside basis");
  int total = 0;
  while (layer_offset(total + 1) <= idx) ++total;
  const int m = idx - layer_offset(total);
  return {m, total - m};
}

FockState FockState::pure(const FockBasis& basis, Eigen::VectorXcd amplitudes,
                          double leakage) {
  if (amplitudes.size() != basis.dim()) {
    fail_argument("amplitude vector does not match basis dimension");
  }
  FockState s(basis, true);
  s.amp_ = std::move(amplitudes);
  s.leakage_ = leakage;
  return s;
}

FockState FockState::density(const FockBasis& basis, Eigen::MatrixXcd rho,
                             double leakage) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim()) {
    fail_argument("density matrix does not match basis dimension");
  }
  FockState s(basis, false);
  s.rho_ = std::move(rho);
  s.leakage_ = leakage;
  return s;
}

const Eigen::VectorXcd& FockState::amplitudes() const {
  if (!pure_) fail_argument("state is not pure");
  return amp_;
}

const Eigen::MatrixXcd& FockState::rho() const {
  if (pure_) fail_argument("state is stored as a pure vector");
  return rho_;
}

Eigen::MatrixXcd FockState::density_matrix() const {
  if (pure_) return amp_ * amp_.adjoint();
  return rho_;
}

double FockState::trace_norm() const {
  if (pure_) return amp_.squaredNorm();
  return rho_.trace().real();
}

double FockState::purity() const {
  if (pure_) {
    const double n = amp_.squaredNorm();
    return n * n;
  }
  return (rho_ * rho_).trace().real();
}

std::shared_ptr<const StokesOperators> stokes_operators(
    const FockBasis& basis) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const StokesOperators>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(basis.n_max());
    if (it != cache.end()) return it->second;
  }

  const int d = basis.dim();
  auto ops = std::make_shared<StokesOperators>();
  ops->n_max = basis.n_max();
  ops->s0 = Eigen::MatrixXcd::Zero(d, d);
  ops->s1 = Eigen::MatrixXcd::Zero(d, d);
  ops->s2 = Eigen::MatrixXcd::Zero(d, d);
  ops->s3 = Eigen::MatrixXcd::Zero(d, d);
  for (int total = 0; total <= basis.n_max(); ++total) {
    for (int m = 0; m <= total; ++m) {
      const int n = total - m;
      const int row = basis.index(m, n);
      ops->s0(row, row) = 0.5 * total;
      ops->s3(row, row) = 0.5 * (m - n);
      // a^dag b |m-1, n+1> -> sqrt(m (n+1)) |m, n>
      if (m >= 1) {
        const int col = basis.index(m - 1, n + 1);
        const double amp = 0.5 * std::sqrt(static_cast<double>(m) * (n + 1));
        ops->s1(row, col) += amp;
        ops->s2(row, col) += -kI * amp;
      }
      // b^dag a |m+1, n-1> -> sqrt((m+1) n) |m, n>
      if (n >= 1) {
        const int col = basis.index(m + 1, n - 1);
        const double amp = 0.5 * std::sqrt(static_cast<double>(m + 1) * n);
        ops->s1(row, col) += amp;
        ops->s2(row, col) += kI * amp;
      }
    }
  }
  ops->number = 2.0 * ops->s0;

  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(basis.n_max(), std::move(ops));
  return it->second;
}

const Eigen::MatrixXcd& StokesOperators::component(int i) const {
  switch (i) {
    case 0: return s0;
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: fail_argument("Stokes component index must be in 0..3");
  }
}

double expectation(const FockState& state, const Eigen::MatrixXcd& op) {
  if (state.is_pure()) {
    const Eigen::VectorXcd& psi = state.amplitudes();
    return (psi.adjoint() * op * psi)(0).real();
  }
  return (state.rho() * op).trace().real();
}

StokesMoments moments(const FockState& state) {
  auto ops = stokes_operators(state.basis());
  StokesMoments mo;
  mo.s0_mean = expectation(state, ops->s0);
  const std::array<const Eigen::MatrixXcd*, 3> s = {&ops->s1, &ops->s2,
                                                    &ops->s3};
  for (int i = 0; i < 3; ++i) mo.mean[i] = expectation(state, *s[i]);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const double sym =
          0.5 * expectation(state, (*s[i]) * (*s[j]) + (*s[j]) * (*s[i]));
      mo.covariance(i, j) = sym - mo.mean[i] * mo.mean[j];
      mo.covariance(j, i) = mo.covariance(i, j);
    }
  }
  return mo;
}

StokesVector stokes_vector(const FockState& state) {
  const StokesMoments mo = moments(state);
  return {mo.s0_mean, mo.mean[0], mo.mean[1], mo.mean[2]};
}

double dop(const FockState& state) {
  const StokesMoments mo = moments(state);
  if (mo.s0_mean <= 0.0) {
    fail_physical("degree of polarization undefined for vacuum");
  }
  return mo.mean.norm() / mo.s0_mean;
}

// --- constructors -----------------------------------------------------------

FockState basis_state(const FockBasis& basis, int m, int n) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
  amp[basis.index(m, n)] = 1.0;
  return FockState::pure(basis, std::move(amp));
}

FockState su2_coherent(const FockBasis& basis, int n_photons, double theta,
                       double phi) {
  if (n_photons > basis.n_max()) {
    fail_argument("su2_coherent needs n_max >= N");
  }
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  for (int m = 0; m <= n_photons; ++m) {
    amp[basis.index(m, n_photons - m)] =
        std::sqrt(binomial(n_photons, m)) * std::pow(c, m) *
        std::pow(s, n_photons - m) *
        std::exp(kI * (phi * static_cast<double>(n_photons - m)));
  }
  return FockState::pure(basis, std::move(amp));
}

FockState noon_state(const FockBasis& basis, int n_photons) {
  if (n_photons > basis.n_max()) fail_argument("noon_state needs n_max >= N");
  if (n_photons < 1) fail_argument("noon_state needs N >= 1");
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
  amp[basis.index(n_photons, 0)] = 1.0 / std::sqrt(2.0);
  amp[basis.index(0, n_photons)] = 1.0 / std::sqrt(2.0);
  return FockState::pure(basis, std::move(amp));
}

FockState tetrahedron_state(const FockBasis& basis) {
  if (basis.n_max() < 4) fail_argument("tetrahedron_state needs n_max >= 4");
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
  amp[basis.index(4, 0)] = 1.0 / std::sqrt(3.0);
  amp[basis.index(1, 3)] = std::sqrt(2.0 / 3.0);
  return FockState::pure(basis, std::move(amp));
}

FockState coherent_polarized(const FockBasis& basis, cplx alpha, double theta,
                             double phi, double leakage_threshold) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
  const double mean = std::norm(alpha);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  double kept = 0.0;
  // Poissonian superposition of coherent layers: amplitude
  // e^{-|alpha|^2/2} alpha^N / sqrt(N!) on layer N.
  cplx layer_amp = std::exp(-0.5 * mean);
  for (int total = 0; total <= basis.n_max(); ++total) {
    if (total > 0) layer_amp *= alpha / std::sqrt(static_cast<double>(total));
    for (int m = 0; m <= total; ++m) {
      amp[basis.index(m, total - m)] =
          layer_amp * std::sqrt(binomial(total, m)) * std::pow(c, m) *
          std::pow(s, total - m) *
          std::exp(kI * (phi * static_cast<double>(total - m)));
    }
    kept += std::norm(layer_amp);
  }
  const double leakage = std::max(0.0, 1.0 - kept);
  if (leakage > leakage_threshold) {
    fail_argument("coherent state truncation leakage " + format_scalar(leakage) +
                  " exceeds threshold " + format_scalar(leakage_threshold) +
                  "; raise n_max");
  }
  return FockState::pure(basis, std::move(amp), leakage);
}

FockState tmsv_state(const FockBasis& basis, double zeta, double phase,
                     double leakage_threshold) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
  const double th = std::tanh(zeta);
  const double ch = std::cosh(zeta);
  double kept = 0.0;
  cplx term = 1.0 / ch;
  for (int n = 0; 2 * n <= basis.n_max(); ++n) {
    amp[basis.index(n, n)] = term;
    kept += std::norm(term);
    term *= -std::exp(kI * phase) * th;
  }
  const double leakage = std::max(0.0, 1.0 - kept);
  if (leakage > leakage_threshold) {
    fail_argument("TMSV truncation leakage " + format_scalar(leakage) +
                  " exceeds threshold " + format_scalar(leakage_threshold) +
                  "; raise n_max");
  }
  return FockState::pure(basis, std::move(amp), leakage);
}

FockState isotropic_state(const FockBasis& basis,
                          const std::vector<double>& beta) {
  if (beta.empty()) fail_argument("isotropic_state needs layer weights");
  if (static_cast<int>(beta.size()) > basis.n_max() + 1) {
    fail_argument("more layer weights than basis layers");
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  double total_weight = 0.0;
  for (std::size_t n = 0; n < beta.size(); ++n) {
    if (beta[n] < 0.0) fail_argument("layer weights must be nonnegative");
    total_weight += beta[n];
    const int offset = FockBasis::layer_offset(static_cast<int>(n));
    const int ld = FockBasis::layer_dim(static_cast<int>(n));
    for (int k = 0; k < ld; ++k) {
      rho(offset + k, offset + k) = beta[n] / ld;
    }
  }
  if (std::abs(total_weight - 1.0) > 1e-9) {
    fail_argument("isotropic layer weights must sum to 1");
  }
  return FockState::density(basis, std::move(rho));
}

FockState isotropic_poisson(const FockBasis& basis, double mean_photons,
                            double leakage_threshold) {
  std::vector<double> beta(static_cast<std::size_t>(basis.n_max()) + 1, 0.0);
  double weight = std::exp(-mean_photons);
  double kept = 0.0;
  for (int n = 0; n <= basis.n_max(); ++n) {
    beta[static_cast<std::size_t>(n)] = weight;
    kept += weight;
    weight *= mean_photons / (n + 1);
  }
  const double leakage = std::max(0.0, 1.0 - kept);
  if (leakage > leakage_threshold) {
    fail_argument("isotropic Poisson leakage " + format_scalar(leakage) +
                  " exceeds threshold " + format_scalar(leakage_threshold) +
                  "; raise n_max");
  }
  // Renormalization is declined; the missing tail stays recorded as leakage.
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (int n = 0; n <= basis.n_max(); ++n) {
    const int offset = FockBasis::layer_offset(n);
    for (int k = 0; k < FockBasis::layer_dim(n); ++k) {
      rho(offset + k, offset + k) =
          beta[static_cast<std::size_t>(n)] / FockBasis::layer_dim(n);
    }
  }
  return FockState::density(basis, std::move(rho), leakage);
}

FockState noon_inspired(const FockBasis& basis, int m_photons, int n_photons,
                        double theta, double phi) {
  if (std::max(m_photons, n_photons) > basis.n_max()) {
    fail_argument("noon_inspired needs n_max >= max(M, N)");
  }
  const FockState along = su2_coherent(basis, m_photons, theta, phi);
  // Antipodal direction.
  const FockState against =
      su2_coherent(basis, n_photons, M_PI - theta, phi + M_PI);
  const double wm = std::sqrt(static_cast<double>(n_photons));
  const double wn = std::sqrt(static_cast<double>(m_photons));
  Eigen::VectorXcd amp =
      (wm * along.amplitudes() + wn * against.amplitudes()) /
      std::sqrt(static_cast<double>(m_photons + n_photons));
  return FockState::pure(basis, std::move(amp));
}

// --- rotations --------------------------------------------------------------

Eigen::MatrixXcd rotation_operator(const FockBasis& basis, double theta,
                                   const Eigen::Vector3d& n) {
  if (std::abs(n.norm() - 1.0) > 1e-9) {
    fail_argument("rotation axis must be a unit vector");
  }
  auto ops = stokes_operators(basis);
  const Eigen::MatrixXcd generator =
      n[0] * ops->s1 + n[1] * ops->s2 + n[2] * ops->s3;
  Eigen::MatrixXcd result =
      Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  // The generator is block diagonal over layers; exponentiate each block via
  // its Hermitian eigendecomposition.
  for (int total = 0; total <= basis.n_max(); ++total) {
    const int off = FockBasis::layer_offset(total);
    const int ld = FockBasis::layer_dim(total);
    const Eigen::MatrixXcd block = generator.block(off, off, ld, ld);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
    Eigen::VectorXcd phases(ld);
    for (int k = 0; k < ld; ++k) {
      phases[k] = std::exp(-kI * theta * es.eigenvalues()[k]);
    }
    result.block(off, off, ld, ld) = es.eigenvectors() *
                                     phases.asDiagonal() *
                                     es.eigenvectors().adjoint();
  }
  return result;
}

FockState rotate(const FockState& state, double theta,
                 const Eigen::Vector3d& n) {
  const Eigen::MatrixXcd r = rotation_operator(state.basis(), theta, n);
  if (state.is_pure()) {
    return FockState::pure(state.basis(), r * state.amplitudes(),
                           state.leakage());
  }
  return FockState::density(state.basis(), r * state.rho() * r.adjoint(),
                            state.leakage());
}

// --- layer structure ---------------------------------------------------------

Eigen::VectorXd layer_weights(const FockState& state) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(state.basis().n_max() + 1);
  if (state.is_pure()) {
    const auto& amp = state.amplitudes();
    for (int total = 0; total <= state.basis().n_max(); ++total) {
      const int off = FockBasis::layer_offset(total);
      w[total] = amp.segment(off, FockBasis::layer_dim(total)).squaredNorm();
    }
  } else {
    const auto& rho = state.rho();
    for (int total = 0; total <= state.basis().n_max(); ++total) {
      const int off = FockBasis::layer_offset(total);
      w[total] = rho.block(off, off, FockBasis::layer_dim(total),
                           FockBasis::layer_dim(total))
                     .trace()
                     .real();
    }
  }
  return w;
}

bool supported_on_layer(const FockState& state, int n_photons, double tol) {
  const Eigen::VectorXd w = layer_weights(state);
  double off_layer = 0.0;
  for (int total = 0; total <= state.basis().n_max(); ++total) {
    if (total != n_photons) off_layer += std::abs(w[total]);
  }
  return off_layer <= tol;
}

int single_layer(const FockState& state, double tol) {
  const Eigen::VectorXd w = layer_weights(state);
  int layer = -1;
  for (int total = 0; total <= state.basis().n_max(); ++total) {
    if (std::abs(w[total]) > tol) {
      if (layer >= 0) return -1;
      layer = total;
    }
  }
  return layer;
}

Eigen::MatrixXcd layer_block(const FockState& state, int n_photons) {
  if (n_photons < 0 || n_photons > state.basis().n_max()) {
    fail_argument("layer outside basis");
  }
  const int off = FockBasis::layer_offset(n_photons);
  const int ld = FockBasis::layer_dim(n_photons);
  return state.density_matrix().block(off, off, ld, ld);
}

namespace {

// One-photon reduction of a single (N+1)x(N+1) layer block into an N x N
// block (N >= 1), in the |m, N-m> ordering.
Eigen::MatrixXcd reduce_layer_block(const Eigen::MatrixXcd& block) {
  const int n_photons = static_cast<int>(block.rows()) - 1;
  const double dn = n_photons;
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(n_photons, n_photons);
  for (int m = 0; m < n_photons; ++m) {
    for (int n = 0; n < n_photons; ++n) {
      const double keep =
          std::sqrt(static_cast<double>(n_photons - m) * (n_photons - n)) / dn;
      const double shift =
          std::sqrt(static_cast<double>(m + 1) * (n + 1)) / dn;
      out(m, n) = keep * block(m, n) + shift * block(m + 1, n + 1);
    }
  }
  return out;
}

}  // namespace

FockState partial_trace_one_photon(const FockState& state) {
  const int layer = single_layer(state);
  if (layer < 0) {
    fail_argument(
        "partial_trace_one_photon needs a state supported on one layer; use "
        "trace_one_photon_mixed for mixtures");
  }
  if (layer == 0) fail_argument("cannot remove a photon from the vacuum");
  const int off = FockBasis::layer_offset(layer);
  const int ld = FockBasis::layer_dim(layer);
  const Eigen::MatrixXcd reduced =
      reduce_layer_block(state.density_matrix().block(off, off, ld, ld));
  Eigen::MatrixXcd rho =
      Eigen::MatrixXcd::Zero(state.basis().dim(), state.basis().dim());
  rho.block(FockBasis::layer_offset(layer - 1),
            FockBasis::layer_offset(layer - 1), layer, layer) = reduced;
  return FockState::density(state.basis(), std::move(rho), state.leakage());
}

FockState reduce_to(const FockState& state, int m_photons) {
  const int layer = single_layer(state);
  if (layer < 0) fail_argument("reduce_to needs a fixed-photon-number state");
  if (m_photons < 0 || m_photons > layer) {
    fail_argument("target photon number must lie in 0..N");
  }
  FockState current = state;
  for (int n = layer; n > m_photons; --n) {
    current = partial_trace_one_photon(current);
  }
  return current;
}

FockState trace_one_photon_mixed(const FockState& state) {
  const Eigen::MatrixXcd rho = state.density_matrix();
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(state.basis().dim(), state.basis().dim());
  // Vacuum weight has no photon to drop; it is carried through unchanged.
  out(0, 0) = rho(0, 0);
  for (int total = 1; total <= state.basis().n_max(); ++total) {
    const int off = FockBasis::layer_offset(total);
    const int ld = FockBasis::layer_dim(total);
    const Eigen::MatrixXcd reduced =
        reduce_layer_block(rho.block(off, off, ld, ld));
    out.block(FockBasis::layer_offset(total - 1),
              FockBasis::layer_offset(total - 1), total, total) += reduced;
  }
  return FockState::density(state.basis(), std::move(out), state.leakage());
}

// --- diagnostics --------------------------------------------------------------

UncertaintyReport uncertainty_report(const FockState& state) {
  const StokesMoments mo = moments(state);
  UncertaintyReport rep;
  rep.var_s1 = mo.covariance(0, 0);
  rep.var_s2 = mo.covariance(1, 1);
  rep.var_s3 = mo.covariance(2, 2);
  rep.s0_mean = mo.s0_mean;
  const double sum = rep.var_s1 + rep.var_s2 + rep.var_s3;
  rep.product_bound_margin =
      4.0 * rep.var_s1 * rep.var_s2 - mo.mean[2] * mo.mean[2];
  rep.sum_bound_margin = sum - mo.s0_mean;
  rep.classical_margin_unknown_s0 = sum - 2.5 * mo.s0_mean;
  rep.classical_margin_known_s0 = sum - 2.0 * mo.s0_mean;
  return rep;
}

PerfectPolarizationReport perfect_polarization_test(const FockState& state,
                                                    double tol) {
  PerfectPolarizationReport rep;
  const StokesMoments mo = moments(state);
  if (mo.s0_mean <= 0.0) {
    rep.dop_value = 0.0;
    return rep;
  }
  rep.dop_value = mo.mean.norm() / mo.s0_mean;
  if (std::abs(rep.dop_value - 1.0) > 1e-6) return rep;
  rep.direction_defined = true;
  // Rotate the mean direction onto the pole; a perfectly polarized state
  // must then have an empty left-circular mode: <b^dag b> = 0.
  const Eigen::Vector3d dir = mo.mean.normalized();
  const Eigen::Matrix3d r = rotation3_taking(dir, Eigen::Vector3d::UnitZ());
  const RotationFactor rf = rotation_params_from_matrix(r);
  const FockState aligned = rotate(state, rf.theta, rf.axis);
  auto ops = stokes_operators(state.basis());
  // b^dag b = S0 - S3.
  rep.orthogonal_mode_occupation =
      expectation(aligned, Eigen::MatrixXcd(ops->s0 - ops->s3));
  rep.perfectly_polarized = rep.orthogonal_mode_occupation <=
                            tol * std::max(1.0, 2.0 * mo.s0_mean);
  return rep;
}

std::vector<Eigen::Vector3d> direction_grid(int count) {
  // Fibonacci lattice; deterministic and roughly uniform.
  std::vector<Eigen::Vector3d> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / count;
    const double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * M_PI * std::fmod(k / golden, 1.0);
    dirs.emplace_back(radius * std::cos(phi), radius * std::sin(phi), z);
  }
  return dirs;
}

int anticoherence_order(const FockState& state, int k_max, int grid_size,
                        double tol) {
  const int layer = single_layer(state);
  if (layer < 0 || !state.is_pure()) {
    fail_argument("anticoherence_order needs a pure fixed-N state");
  }
  auto ops = stokes_operators(state.basis());
  const auto dirs = direction_grid(std::max(grid_size, 50));
  const double scale = std::max(1.0, 0.5 * layer);
  int order = 0;
  for (int k = 1; k <= k_max; ++k) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& n : dirs) {
      const Eigen::MatrixXcd projected =
          n[0] * ops->s1 + n[1] * ops->s2 + n[2] * ops->s3;
      Eigen::MatrixXcd power = projected;
      for (int j = 1; j < k; ++j) power *= projected;
      const double value = expectation(state, power);
      if (first) {
        lo = hi = value;
        first = false;
      } else {
        lo = std::min(lo, value);
        hi = std::max(hi, value);
      }
    }
    if (hi - lo > tol * std::pow(scale, k)) break;
    order = k;
  }
  return order;
}

double husimi_q(const FockState& state, double theta, double phi,
                int n_photons) {
  const FockState probe = su2_coherent(state.basis(), n_photons, theta, phi);
  return expectation(state, probe.amplitudes() * probe.amplitudes().adjoint());
}

// --- measurement operators -----------------------------------------------------

Eigen::MatrixXcd projector_rotated(const FockBasis& basis, int n_photons,
                                   int m, double theta,
                                   const Eigen::Vector3d& n) {
  if (m < 0 || m > n_photons) fail_argument("projector index outside layer");
  const int idx = basis.index(m, n_photons - m);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  p(idx, idx) = 1.0;
  if (theta == 0.0) return p;
  const Eigen::MatrixXcd r = rotation_operator(basis, theta, n);
  return r * p * r.adjoint();
}

Eigen::MatrixXcd intensity_correlation(const FockBasis& basis, int n_photons,
                                       int m) {
  if (m < 0 || m > n_photons) fail_argument("correlation index outside layer");
  // a^dag^m b^dag^(N-m) a^m b^(N-m) is diagonal:
  // |j,k> -> j!/(j-m)! * k!/(k-(N-m))! |j,k>.
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  const int rest = n_photons - m;
  for (int idx = 0; idx < basis.dim(); ++idx) {
    const auto [j, k] = basis.modes(idx);
    if (j < m || k < rest) continue;
    double value = 1.0;
    for (int t = 0; t < m; ++t) value *= (j - t);
    for (int t = 0; t < rest; ++t) value *= (k - t);
    w(idx, idx) = value;
  }
  return w;
}

Eigen::MatrixXcd stokes_power(const FockBasis& basis, int l) {
  if (l < 0) fail_argument("stokes_power needs l >= 0");
  auto ops = stokes_operators(basis);
  Eigen::MatrixXcd result =
      Eigen::MatrixXcd::Identity(basis.dim(), basis.dim());
  for (int i = 0; i < l; ++i) result *= ops->s3;
  return result;
}

Eigen::MatrixXcd relative_phase_shift(const FockBasis& basis, int n_photons) {
  if (n_photons > basis.n_max()) fail_argument("layer outside basis");
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  // |N,0><0,N| closes the cycle.
  e(basis.index(n_photons, 0), basis.index(0, n_photons)) = 1.0;
  for (int m = 0; m + 1 <= n_photons; ++m) {
    e(basis.index(m, n_photons - m), basis.index(m + 1, n_photons - m - 1)) =
        1.0;
  }
  return e;
}

double overlap(const FockState& a, const FockState& b) {
  if (!a.is_pure() || !b.is_pure()) fail_argument("overlap needs pure states");
  if (!(a.basis() == b.basis())) fail_argument("basis mismatch");
  const double na = a.amplitudes().norm();
  const double nb = b.amplitudes().norm();
  if (na == 0.0 || nb == 0.0) fail_argument("overlap with null state");
  return std::abs((a.amplitudes().adjoint() * b.amplitudes())(0)) / (na * nb);
}

}  // namespace polab
