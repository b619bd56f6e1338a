#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "core/mueller.hpp"
#include "core/stokes.hpp"

// Truncated two-mode bosonic Fock space.  Basis states |m,n> hold m photons
// in the right-circular mode and n in the left-circular mode; states are
// stored flat with layers of fixed total photon number N = m + n contiguous.
// Within layer N the state |m, N-m> sits at offset m, i.e. at flat index
// N(N+1)/2 + m.

namespace polab {

class FockBasis {
 public:
  explicit FockBasis(int n_max) : n_max_(n_max) {
    if (n_max < 0) fail_argument("n_max must be nonnegative");
  }

  int n_max() const { return n_max_; }
  int dim() const { return (n_max_ + 1) * (n_max_ + 2) / 2; }

  static int layer_offset(int total) { return total * (total + 1) / 2; }
  static int layer_dim(int total) { return total + 1; }

  int index(int m, int n) const {
    if (m < 0 || n < 0 || m + n > n_max_) fail_argument("|m,n> outside basis");
    return layer_offset(m + n) + m;
  }

  // Inverse of index(): returns (m, n).
  std::pair<int, int> modes(int idx) const;

  bool operator==(const FockBasis& other) const {
    return n_max_ == other.n_max_;
  }

 private:
  int n_max_;
};

// Two-mode polarization state, pure (amplitude vector) or density matrix.
// `leakage` records probability mass lost to truncation by constructors of
// indefinite photon number; it is never silently renormalized away.
class FockState {
 public:
  static FockState pure(const FockBasis& basis, Eigen::VectorXcd amplitudes,
                        double leakage = 0.0);
  static FockState density(const FockBasis& basis, Eigen::MatrixXcd rho,
                           double leakage = 0.0);

  bool is_pure() const { return pure_; }
  const FockBasis& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const;
  const Eigen::MatrixXcd& rho() const;
  Eigen::MatrixXcd density_matrix() const;  // works for both kinds
  double leakage() const { return leakage_; }

  // Tr(rho) or |psi|^2; equals 1 - leakage for freshly built states.
  double trace_norm() const;
  double purity() const;

 private:
  FockState(const FockBasis& basis, bool pure) : basis_(basis), pure_(pure) {}

  FockBasis basis_;
  bool pure_;
  Eigen::VectorXcd amp_;
  Eigen::MatrixXcd rho_;
  double leakage_ = 0.0;
};

struct StokesOperators {
  int n_max = 0;
  Eigen::MatrixXcd s0, s1, s2, s3;  // Hermitian, layer block-diagonal
  Eigen::MatrixXcd number;          // 2 * s0

  const Eigen::MatrixXcd& component(int i) const;  // i in 0..3
};

// Cached per n_max; concurrent readers are safe and each basis size is
// built exactly once.
std::shared_ptr<const StokesOperators> stokes_operators(const FockBasis& basis);

struct StokesMoments {
  double s0_mean = 0.0;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();  // symmetrized
};

StokesMoments moments(const FockState& state);
StokesVector stokes_vector(const FockState& state);
double dop(const FockState& state);

double expectation(const FockState& state, const Eigen::MatrixXcd& op);

// --- constructors ---------------------------------------------------------

FockState basis_state(const FockBasis& basis, int m, int n);

// All N photons polarized along (theta, phi).
FockState su2_coherent(const FockBasis& basis, int n_photons, double theta,
                       double phi);

// (|N,0> + |0,N>)/sqrt(2).
FockState noon_state(const FockBasis& basis, int n_photons);

// (|4,0> + sqrt(2)|1,3>)/sqrt(3): four-photon state whose star constellation
// is a regular tetrahedron.
FockState tetrahedron_state(const FockBasis& basis);

// Canonical coherent state with amplitude alpha in the (theta, phi) mode.
FockState coherent_polarized(const FockBasis& basis, cplx alpha, double theta,
                             double phi,
                             double leakage_threshold = kLeakageThreshold);

// Two-mode squeezed vacuum sum_N (-e^{i phase} tanh zeta)^N |N,N> / cosh zeta.
FockState tmsv_state(const FockBasis& basis, double zeta, double phase,
                     double leakage_threshold = kLeakageThreshold);

// Convex combination of per-layer maximally mixed states with weights beta.
FockState isotropic_state(const FockBasis& basis,
                          const std::vector<double>& beta);

// Isotropic state with Poissonian layer weights of the given mean photon
// number.
FockState isotropic_poisson(const FockBasis& basis, double mean_photons,
                            double leakage_threshold = kLeakageThreshold);

// (sqrt(N)|Omega^(M)> + sqrt(M)|Omega_perp^(N)>) / sqrt(M+N); unpolarized
// across two photon-number layers.
FockState noon_inspired(const FockBasis& basis, int m_photons, int n_photons,
                        double theta, double phi);

// --- rotations ------------------------------------------------------------

// exp(-i theta n . S_hat), block-diagonal over layers; Stokes means
// transform by rotation3(theta, n).
Eigen::MatrixXcd rotation_operator(const FockBasis& basis, double theta,
                                   const Eigen::Vector3d& n);

FockState rotate(const FockState& state, double theta,
                 const Eigen::Vector3d& n);

// --- layer structure ------------------------------------------------------

// Probability weight in each layer N = 0..n_max.
Eigen::VectorXd layer_weights(const FockState& state);

// True if the state is supported (within tol) on the single layer
// `n_photons`.
bool supported_on_layer(const FockState& state, int n_photons,
                        double tol = kDefaultTol);

// The unique layer carrying all the weight, or -1 if several do.
int single_layer(const FockState& state, double tol = kDefaultTol);

// Restriction of a density matrix to one layer (not renormalized).
Eigen::MatrixXcd layer_block(const FockState& state, int n_photons);

// --- photon subset tracing -------------------------------------------------

// Removes one (permutationally invariant) photon from a fixed-N state:
// rho^(N-1)_{m,n} = sqrt((N-m)(N-n))/N rho^(N)_{m,n}
//                 + sqrt((m+1)(n+1))/N rho^(N)_{m+1,n+1}.
FockState partial_trace_one_photon(const FockState& state);

// Iterates the one-photon trace down to `m_photons` photons.
FockState reduce_to(const FockState& state, int m_photons);

// One-photon trace for states mixing several layers: every layer N >= 1
// is reduced with the fixed-N rule (weights preserved); vacuum weight is
// left in place.
FockState trace_one_photon_mixed(const FockState& state);

// --- diagnostics ----------------------------------------------------------

struct UncertaintyReport {
  double var_s1 = 0.0, var_s2 = 0.0, var_s3 = 0.0;
  double s0_mean = 0.0;
  // 4 Var(S1) Var(S2) - |<S3>|^2 >= 0.
  double product_bound_margin = 0.0;
  // sum_i Var(Si) - <S0> >= 0.
  double sum_bound_margin = 0.0;
  // Margins against the first-moment estimation limits for classical
  // states: sum Var - 5/2 <S0> (S0 unknown) and sum Var - 2 <S0> (S0
  // known).  Diagnostic only; genuinely quantum states may go below.
  double classical_margin_unknown_s0 = 0.0;
  double classical_margin_known_s0 = 0.0;
};

UncertaintyReport uncertainty_report(const FockState& state);

struct PerfectPolarizationReport {
  double dop_value = 0.0;
  bool perfectly_polarized = false;
  // Mean occupation of the mode orthogonal to the polarization direction
  // after rotating that direction to the pole; zero iff the state is a
  // one-mode state in disguise.
  double orthogonal_mode_occupation = 0.0;
  bool direction_defined = false;
};

PerfectPolarizationReport perfect_polarization_test(const FockState& state,
                                                    double tol = kDefaultTol);

// Largest k <= k_max with <(S.n)^j> independent of n over a deterministic
// direction grid for all j <= k.
int anticoherence_order(const FockState& state, int k_max,
                        int grid_size = 60, double tol = 1e-8);

// Deterministic Fibonacci-lattice covering of the sphere.
std::vector<Eigen::Vector3d> direction_grid(int count);

// SU(2)-coherent-state overlap <Omega^(N)| rho |Omega^(N)>.
double husimi_q(const FockState& state, double theta, double phi,
                int n_photons);

// --- measurement operators --------------------------------------------------

// Rotated layer projector R |m, N-m><m, N-m| R^dag.
Eigen::MatrixXcd projector_rotated(const FockBasis& basis, int n_photons,
                                   int m, double theta,
                                   const Eigen::Vector3d& n);

// Intensity correlation a^dag^m b^dag^(N-m) a^m b^(N-m).
Eigen::MatrixXcd intensity_correlation(const FockBasis& basis, int n_photons,
                                       int m);

// S3^l.
Eigen::MatrixXcd stokes_power(const FockBasis& basis, int l);

// Cyclic ladder on layer N: |N,0><0,N| + sum_m |m,N-m><m+1,N-m-1|;
// unitary on the layer, shifts S3 eigenstates by one quantum.
Eigen::MatrixXcd relative_phase_shift(const FockBasis& basis, int n_photons);

// --- misc -------------------------------------------------------------------

// |<a|b>| for pure states (after normalization).
double overlap(const FockState& a, const FockState& b);

double binomial(int n, int k);

}  // namespace polab
