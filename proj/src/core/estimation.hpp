#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "core/channels.hpp"
#include "core/fock.hpp"

// Quantum Fisher information machinery: symmetric logarithmic derivatives,
// the information matrix with saturability diagnostics, rotation-sensing
// bounds, and the closed-form estimation scenarios (phase, loss,
// diattenuation, combined phase + loss).  Scenario evaluators always build
// their probe states and channels from the other modules; closed-form
// reference values live in the tests, not here.

namespace polab {

inline constexpr double kSldRankTol = 1e-12;
inline constexpr double kDerivativeStep = 1e-5;

// Hermitian L with drho = (L rho + rho L)/2 on the support of rho;
// components between null directions are set to zero.
Eigen::MatrixXcd sld(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho,
                     double rank_tol = kSldRankTol);

struct QfimResult {
  Eigen::MatrixXd qfim;       // symmetric PSD
  std::vector<Eigen::MatrixXcd> slds;
  // Im Tr(rho [L_i, L_j]); all zero iff the multiparameter bound is
  // saturable by one measurement.
  Eigen::MatrixXd commutativity_residuals;
  std::optional<double> scalar_bound;  // Tr(W Q^{-1}) when requested

  double max_commutativity_residual() const {
    return commutativity_residuals.size() == 0
               ? 0.0
               : commutativity_residuals.cwiseAbs().maxCoeff();
  }
};

QfimResult qfim(const Eigen::MatrixXcd& rho,
                const std::vector<Eigen::MatrixXcd>& drho,
                double rank_tol = kSldRankTol);

// Pure-state shortcut Q_ij = 4 Cov(G_i, G_j) for unitary generators G_i.
QfimResult qfim_pure(const FockState& state,
                     const std::vector<Eigen::MatrixXcd>& generators);

// A differentiable parametric family of states.  If `analytic_derivative`
// is absent, derivatives use Richardson-extrapolated central differences
// with the given step.
struct ParamFamily {
  std::function<FockState(const Eigen::VectorXd&)> evaluator;
  std::function<std::vector<Eigen::MatrixXcd>(const Eigen::VectorXd&)>
      analytic_derivative;
  double step = kDerivativeStep;
};

std::vector<Eigen::MatrixXcd> differentiate(const ParamFamily& family,
                                            const Eigen::VectorXd& theta);

QfimResult qfim_of_family(const ParamFamily& family,
                          const Eigen::VectorXd& theta,
                          double rank_tol = kSldRankTol);

// --- rotation sensing -------------------------------------------------------

enum class RotationParametrization {
  axis_angle,  // theta is the rotation vector, R = exp(-i theta . S)
  euler_zyz,   // R = Rz(a) Ry(b) Rz(c)
};

struct RotationFrame {
  // Columns g_i of the generator matrix: G_i = g_i . S_hat.
  Eigen::Matrix3d generator_matrix = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  double wmse_bound = 0.0;  // Tr(C^{-1}) with the SU(2) metric weight
  bool covariance_invertible = false;
  Eigen::Vector3d null_direction = Eigen::Vector3d::Zero();
  // Full QFIM 4 G~^T C G~ at the working point for this parametrization.
  Eigen::Matrix3d qfim = Eigen::Matrix3d::Zero();
};

// 2x2 representation of the rotation for a parametrization.
JonesMatrix rotation_su2(RotationParametrization parametrization,
                         const Eigen::Vector3d& theta);

RotationFrame rotation_frame(const FockState& state,
                             RotationParametrization parametrization,
                             const Eigen::Vector3d& theta);

// --- scenarios --------------------------------------------------------------

// QFI for the rotation angle about e3 at theta = 0, via the SLD path.
double scenario_phase_qfi(const FockState& probe);

// QFI for the survival probability of mode-a attenuation at q.
double scenario_loss_qfi(const FockState& probe, double q);

// 2x2 QFIM for the two transmissions of a diattenuation along e3.
QfimResult scenario_diattenuation_qfim(const FockState& probe, double q,
                                       double r);

// Joint (theta, q) estimation, rotation applied before the loss.
QfimResult scenario_phase_loss_qfim(const FockState& probe, double theta,
                                    double q);

}  // namespace polab
