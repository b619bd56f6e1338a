#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "core/stokes.hpp"

// Deterministic (Jones) and nondeterministic (Mueller) polarization
// transformations, canonical constructors, decompositions, and physical
// validity diagnostics.

namespace polab {

using JonesMatrix = Eigen::Matrix2cd;
using MuellerMatrix = Eigen::Matrix4d;

struct RotationFactor {
  double theta = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};

struct BoostFactor {
  double eta = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};

struct DiattenuationFactor {
  double q = 1.0;
  double r = 1.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};

// Canonical factorization of a deterministic transformation: overall scale
// t, a rotation, a boost (equivalently a diattenuation), and for general
// Mueller matrices a residual depolarizer block (p_vec, m_mat).
struct TransformDecomposition {
  double t = 1.0;
  RotationFactor rotation;
  BoostFactor boost;
  DiattenuationFactor diattenuation;
  Eigen::Vector3d p_vec = Eigen::Vector3d::Zero();
  Eigen::Matrix3d m_mat = Eigen::Matrix3d::Identity();
};

struct MuellerValidityReport {
  // Tr(M M^T) - 4 M00^2; zero (within tolerance) iff deterministic.
  double trace_bound_excess = 0.0;
  double transmittance = 0.0;          // M00 + |first row tail|
  double reverse_transmittance = 0.0;  // M00 + |first column tail|
  // Eigenvalues of the Hermitian coherency (Choi) matrix
  // C = (1/4) sum_{mu,nu} M_{mu,nu} sigma_mu (x) sigma_nu^*,
  // sorted descending.  All nonnegative iff M is a positive-weight mixture
  // of single-Jones transformations.
  std::array<double, 4> cloude_eigenvalues{};
  // Distance of M^T G M from being proportional to the Minkowski metric
  // G = diag(1,-1,-1,-1); zero for deterministic transformations.
  double lorentz_invariant_residual = 0.0;

  bool deterministic = false;
  bool cloude_positive = false;
  bool transmittance_ok = false;
  bool reverse_transmittance_ok = false;
  // Transmittance value in (1, 1+tol]; accepted but worth surfacing.
  bool transmittance_boundary = false;
  bool physical = false;  // cloude_positive && both transmittances
};

struct PolarFactors {
  JonesMatrix rotation;     // unitary, det = 1
  JonesMatrix boost_right;  // Hermitian positive definite, det = 1
  JonesMatrix boost_left;   // boost for the reversed order
  // J = rotation * boost_right = boost_left * rotation
};

struct LuChipmanFactors {
  MuellerMatrix rotation = MuellerMatrix::Identity();
  MuellerMatrix diattenuation = MuellerMatrix::Identity();
  Eigen::Matrix3d depolarizer_m = Eigen::Matrix3d::Identity();
  DiattenuationFactor diattenuation_params;
  RotationFactor rotation_params;
  // Set when q or r vanishes or the residual block is singular; the
  // factorization is then not unique.
  bool degenerate = false;
};

// M_{mu,nu} = Tr(sigma_mu J sigma_nu J^dag) / 2.
MuellerMatrix mueller_from_jones(const JonesMatrix& j);

// sum_i lambda_i * mueller_from_jones(J_i); negative weights permitted
// (physicality is checked separately by validate_mueller).
MuellerMatrix mueller_from_jones_mixture(const std::vector<double>& weights,
                                         const std::vector<JonesMatrix>& js);

// exp(-i theta n.sigma / 2); unitary with det = 1.
JonesMatrix jones_rotation(double theta, const Eigen::Vector3d& n);

// exp(eta n.sigma / 2); Hermitian positive definite with det = 1.
JonesMatrix jones_boost(double eta, const Eigen::Vector3d& n);

// Rodrigues rotation matrix
// R_ij = delta_ij cos(t) - sum_k eps_ijk n_k sin(t) + n_i n_j (1 - cos(t)).
Eigen::Matrix3d rotation3(double theta, const Eigen::Vector3d& n);

// Some rotation with R * from = to (two-parameter family; a convenient
// element is returned).
Eigen::Matrix3d rotation3_taking(const Eigen::Vector3d& from,
                                 const Eigen::Vector3d& to);

// block-diag(1, rotation3(theta, n)).
MuellerMatrix mueller_rotation(double theta, const Eigen::Vector3d& n);
MuellerMatrix mueller_rotation(const Eigen::Matrix3d& r);

// Intensity transmissions q, r for the orthogonal modes along +-n.
MuellerMatrix mueller_diattenuation(double q, double r,
                                    const Eigen::Vector3d& n);

// J = t * J_sl up to a global phase, det(J_sl) = 1, t = |det J|^(1/2).
// Fails for singular J.
std::pair<double, JonesMatrix> scale_factor_decompose(
    const JonesMatrix& j, double tol = kDefaultTol);

// Polar decomposition of a unit-determinant Jones matrix into rotation and
// boost factors, both orders.
PolarFactors polar_decompose(const JonesMatrix& j_sl, double tol = kDefaultTol);

// Extracts (theta, axis) from a det-1 unitary, up to the usual sign
// ambiguity (theta in [0, pi]).
RotationFactor rotation_params_from_jones(const JonesMatrix& u);
RotationFactor rotation_params_from_matrix(const Eigen::Matrix3d& r);

// Extracts (eta, axis) from a Hermitian positive det-1 matrix.
BoostFactor boost_params_from_jones(const JonesMatrix& h);

// [[1, 0], [p_vec, m_mat]]; requires |p_vec| <= 1.
MuellerMatrix depolarizer(const Eigen::Vector3d& p_vec,
                          const Eigen::Matrix3d& m_mat);

// Factors M = M_rot * M_diatten * depolarizer(0, m') for physical M.
LuChipmanFactors lu_chipman_decompose(const MuellerMatrix& m,
                                      double tol = kDefaultTol);

StokesVector apply_mueller(const MuellerMatrix& m, const StokesVector& s);
CoherencyMatrix apply_jones(const JonesMatrix& j, const CoherencyMatrix& psi);

// Hermitian coherency (Choi) matrix of a Mueller matrix; rank one for
// deterministic transformations.
Eigen::Matrix4cd cloude_matrix(const MuellerMatrix& m);

MuellerValidityReport validate_mueller(const MuellerMatrix& m,
                                       double tol = 1e-9);

// Full scale/rotation/boost/diattenuation readout for a deterministic
// transformation given by a Jones matrix.
TransformDecomposition decompose_jones(const JonesMatrix& j,
                                       double tol = kDefaultTol);

}  // namespace polab
