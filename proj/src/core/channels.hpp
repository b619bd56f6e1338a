#pragma once

#include <Eigen/SparseCore>
#include <string>
#include <vector>

#include "core/fock.hpp"

// Completely positive trace-preserving maps on two-mode Fock states.
// Channels are stored as explicit Kraus lists except for the complete
// depolarizer, which acts as the exact per-layer twirl.  Loss can only
// lower photon numbers and rotations are layer-diagonal, so no built-in
// channel ever needs a larger basis than its input.
//
// Kraus operators are held in sparse form: every built-in family is sparse
// (loss operators are weighted shifts, rotations are layer blocks,
// polarizer elements are single columns), which keeps the composed
// diattenuation family cheap to build, store, and apply.  Values are kept
// verbatim; only the storage layout differs from a dense list.

namespace polab {

using SparseOp = Eigen::SparseMatrix<cplx>;

class Channel {
 public:
  enum class Kind { kraus_list, layer_twirl };

  static Channel kraus(const FockBasis& basis, std::vector<SparseOp> ops,
                       std::string label);
  static Channel kraus(const FockBasis& basis,
                       const std::vector<Eigen::MatrixXcd>& ops,
                       std::string label);
  static Channel layer_twirl(const FockBasis& basis);

  Kind kind() const { return kind_; }
  const FockBasis& basis() const { return basis_; }
  const std::vector<SparseOp>& sparse_ops() const { return ops_; }
  // Dense copies of the Kraus list (materialized on demand).
  std::vector<Eigen::MatrixXcd> kraus_ops() const;
  const std::string& label() const { return label_; }

  FockState apply(const FockState& state) const;
  // Heisenberg picture: O -> sum_l K_l^dag O K_l.
  Eigen::MatrixXcd heisenberg(const Eigen::MatrixXcd& op) const;

  // || sum_l K_l^dag K_l - 1 ||_inf over matrix entries.
  double completeness_defect() const;

 private:
  Channel(const FockBasis& basis, Kind kind) : basis_(basis), kind_(kind) {}

  FockBasis basis_;
  Kind kind_;
  std::vector<SparseOp> ops_;
  std::string label_;
};

// Per-photon survival probability q on one mode; Kraus operators
// K_l = sum_m sqrt(C(m+l,l) q^m (1-q)^l) |m><m+l| so that |N><N| evolves to
// the Binomial(N, q) photon-number mixture.
enum class Mode { a, b };
Channel attenuation_channel(const FockBasis& basis, double q, Mode mode);

// rotate(n -> e3), attenuate modes a and b by q and r, rotate back; the
// Kraus set is the composed product family.
Channel diattenuation_channel(const FockBasis& basis, double q, double r,
                              const Eigen::Vector3d& n);

Channel rotation_channel(const FockBasis& basis, double theta,
                         const Eigen::Vector3d& n);

struct WeightedRotation {
  double weight = 0.0;
  double theta = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};

// Kraus operators sqrt(lambda_i) R_i; weights must be positive and sum to 1.
Channel rotation_mixture_channel(const FockBasis& basis,
                                 const std::vector<WeightedRotation>& parts);

// Exact uniform average over all polarization rotations: every layer block
// is replaced by its maximally mixed version.
Channel complete_depolarizer(const FockBasis& basis);

// K_{m,n} = |Omega^(m+n)><m,n|: intensity-preserving polarizer along
// (theta, phi).  Trace preserving on the truncated basis only; its induced
// Mueller matrix breaks the reverse transmittance condition.
Channel lossless_polarizer_channel(const FockBasis& basis, double theta,
                                   double phi);

// K_{m,n} = |target><m,n| for a pure target state.
Channel fixed_output_channel(const FockState& target);

// exp(-i chi S3^2): unitary but not Stokes-linear.
Channel kerr_unitary(const FockBasis& basis, double chi);

struct InducedMuellerResult {
  MuellerMatrix mueller = MuellerMatrix::Zero();
  double residual = 0.0;  // rms Stokes misfit over the probe set
  int probe_count = 0;
};

// Least-squares Mueller matrix over a probe set (needs 4 independent
// input Stokes vectors).
InducedMuellerResult induced_mueller(const Channel& channel,
                                     const std::vector<FockState>& probes);

// Mueller action restricted to single-photon inputs (exact, 4 probes).
MuellerMatrix single_photon_mueller(const Channel& channel);

// Probe builders.  Single-photon set: R, L, H, D.
std::vector<FockState> single_photon_probes(const FockBasis& basis);
// SU(2)-coherent probes on a fixed layer along a spread of directions.
std::vector<FockState> layer_probes(const FockBasis& basis, int n_photons,
                                    int directions);
// Coherent probes at several intensities for intensity-dependence checks.
std::vector<FockState> coherent_probes(const FockBasis& basis,
                                       const std::vector<double>& alphas,
                                       int directions,
                                       double leakage_threshold = 1e-9);

}  // namespace polab
