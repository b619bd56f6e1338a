#include "core/estimation.hpp"

#include <cmath>

namespace polab {

namespace {
constexpr cplx kI{0.0, 1.0};
}

Eigen::MatrixXcd sld(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho,
                     double rank_tol) {
  if (rho.rows() != drho.rows() || rho.cols() != drho.cols()) {
    fail_argument("sld dimension mismatch");
  }
  const double herm = (drho - drho.adjoint()).norm();
  if (herm > 1e-8 * std::max(1.0, drho.norm())) {
    fail_argument("sld needs a Hermitian derivative");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  const Eigen::VectorXd lambda = es.eigenvalues();
  const Eigen::MatrixXcd& v = es.eigenvectors();
  const double cutoff = rank_tol * std::max(lambda.cwiseAbs().maxCoeff(), 1e-300);
  const Eigen::MatrixXcd d = v.adjoint() * drho * v;
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (int i = 0; i < l.rows(); ++i) {
    for (int j = 0; j < l.cols(); ++j) {
      const double denom = lambda[i] + lambda[j];
      if (denom > cutoff) l(i, j) = 2.0 * d(i, j) / denom;
    }
  }
  return v * l * v.adjoint();
}

QfimResult qfim(const Eigen::MatrixXcd& rho,
                const std::vector<Eigen::MatrixXcd>& drho, double rank_tol) {
  const int p = static_cast<int>(drho.size());
  QfimResult result;
  result.qfim = Eigen::MatrixXd::Zero(p, p);
  result.commutativity_residuals = Eigen::MatrixXd::Zero(p, p);
  result.slds.reserve(drho.size());
  for (const auto& d : drho) result.slds.push_back(sld(rho, d, rank_tol));
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      const cplx t = (rho * result.slds[static_cast<std::size_t>(i)] *
                      result.slds[static_cast<std::size_t>(j)])
                         .trace();
      // Tr(rho {Li,Lj}/2) is the real part; Tr(rho [Li,Lj]) is twice the
      // imaginary part.
      result.qfim(i, j) = result.qfim(j, i) = t.real();
      result.commutativity_residuals(i, j) = 2.0 * t.imag();
      result.commutativity_residuals(j, i) = -2.0 * t.imag();
    }
  }
  return result;
}

QfimResult qfim_pure(const FockState& state,
                     const std::vector<Eigen::MatrixXcd>& generators) {
  if (!state.is_pure()) fail_argument("qfim_pure needs a pure state");
  const int p = static_cast<int>(generators.size());
  QfimResult result;
  result.qfim = Eigen::MatrixXd::Zero(p, p);
  result.commutativity_residuals = Eigen::MatrixXd::Zero(p, p);
  std::vector<double> means(generators.size());
  for (int i = 0; i < p; ++i) {
    means[static_cast<std::size_t>(i)] =
        expectation(state, generators[static_cast<std::size_t>(i)]);
  }
  const Eigen::VectorXcd& psi = state.amplitudes();
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      const cplx gg = (psi.adjoint() * generators[static_cast<std::size_t>(i)] *
                       generators[static_cast<std::size_t>(j)] * psi)(0);
      const double cov = gg.real() - means[static_cast<std::size_t>(i)] *
                                         means[static_cast<std::size_t>(j)];
      result.qfim(i, j) = result.qfim(j, i) = 4.0 * cov;
      // For pure states Tr(rho [Li,Lj]) = 16 Im<Gi Gj> ... the residual is
      // proportional to Im<psi|Gi Gj|psi>; report that scale.
      result.commutativity_residuals(i, j) = 16.0 * gg.imag();
      result.commutativity_residuals(j, i) = -16.0 * gg.imag();
    }
  }
  return result;
}

std::vector<Eigen::MatrixXcd> differentiate(const ParamFamily& family,
                                            const Eigen::VectorXd& theta) {
  if (family.analytic_derivative) return family.analytic_derivative(theta);
  std::vector<Eigen::MatrixXcd> derivatives;
  const auto central = [&](double h, int k) {
    Eigen::VectorXd up = theta, down = theta;
    up[k] += h;
    down[k] -= h;
    const Eigen::MatrixXcd hi = family.evaluator(up).density_matrix();
    const Eigen::MatrixXcd lo = family.evaluator(down).density_matrix();
    return Eigen::MatrixXcd(((hi - lo) / (2.0 * h)).eval());
  };
  for (int k = 0; k < theta.size(); ++k) {
    // Richardson extrapolation of the second-order central stencil.
    const Eigen::MatrixXcd coarse = central(family.step, k);
    const Eigen::MatrixXcd fine = central(0.5 * family.step, k);
    derivatives.push_back((4.0 * fine - coarse) / 3.0);
  }
  return derivatives;
}

QfimResult qfim_of_family(const ParamFamily& family,
                          const Eigen::VectorXd& theta, double rank_tol) {
  const FockState at = family.evaluator(theta);
  return qfim(at.density_matrix(), differentiate(family, theta), rank_tol);
}

// --- rotation sensing ---------------------------------------------------------

JonesMatrix rotation_su2(RotationParametrization parametrization,
                         const Eigen::Vector3d& theta) {
  switch (parametrization) {
    case RotationParametrization::axis_angle: {
      const double angle = theta.norm();
      if (angle < 1e-300) return JonesMatrix::Identity();
      return jones_rotation(angle, theta / angle);
    }
    case RotationParametrization::euler_zyz:
      return jones_rotation(theta[0], Eigen::Vector3d::UnitZ()) *
             jones_rotation(theta[1], Eigen::Vector3d::UnitY()) *
             jones_rotation(theta[2], Eigen::Vector3d::UnitZ());
  }
  fail_argument("unknown rotation parametrization");
}

RotationFrame rotation_frame(const FockState& state,
                             RotationParametrization parametrization,
                             const Eigen::Vector3d& theta) {
  if (!state.is_pure()) fail_argument("rotation_frame needs a pure probe");
  RotationFrame frame;

  // Generator columns from the 2x2 representation:
  // i dR/dtheta_i R^dag = g_i . sigma/2, so g_i[k] = Tr(sigma_k i dR R^dag).
  const double h = 1e-5;
  const JonesMatrix r0 = rotation_su2(parametrization, theta);
  for (int i = 0; i < 3; ++i) {
    const auto deriv = [&](double step) {
      Eigen::Vector3d up = theta, down = theta;
      up[i] += step;
      down[i] -= step;
      return JonesMatrix(((rotation_su2(parametrization, up) -
                           rotation_su2(parametrization, down)) /
                          (2.0 * step))
                             .eval());
    };
    const JonesMatrix dr = (4.0 * deriv(0.5 * h) - deriv(h)) / 3.0;
    const JonesMatrix g2 = kI * dr * r0.adjoint();
    for (int k = 0; k < 3; ++k) {
      frame.generator_matrix(k, i) = (pauli(k + 1) * g2).trace().real();
    }
  }

  frame.covariance = moments(state).covariance;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(frame.covariance);
  const double tiny = 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff());
  frame.covariance_invertible = es.eigenvalues().minCoeff() > tiny;
  if (frame.covariance_invertible) {
    frame.wmse_bound = frame.covariance.inverse().trace();
  } else {
    frame.wmse_bound = std::numeric_limits<double>::infinity();
    frame.null_direction = es.eigenvectors().col(0);
  }

  // QFIM of the parametrization at the working point: the probe is rotated
  // by R(theta), so the covariance entering the QFIM is that of the rotated
  // state.
  const RotationFactor rf =
      rotation_params_from_jones(rotation_su2(parametrization, theta));
  const FockState rotated =
      rf.theta == 0.0 ? state : rotate(state, rf.theta, rf.axis);
  const Eigen::Matrix3d c_rotated = moments(rotated).covariance;
  frame.qfim = 4.0 * frame.generator_matrix.transpose() * c_rotated *
               frame.generator_matrix;
  return frame;
}

// --- scenarios -----------------------------------------------------------------

double scenario_phase_qfi(const FockState& probe) {
  auto ops = stokes_operators(probe.basis());
  ParamFamily family;
  family.evaluator = [probe, ops](const Eigen::VectorXd& theta) {
    return rotate(probe, theta[0], Eigen::Vector3d::UnitZ());
  };
  family.analytic_derivative =
      [probe, ops](const Eigen::VectorXd& theta) {
        const FockState at =
            rotate(probe, theta[0], Eigen::Vector3d::UnitZ());
        const Eigen::MatrixXcd rho = at.density_matrix();
        std::vector<Eigen::MatrixXcd> d;
        d.push_back(-kI * (ops->s3 * rho - rho * ops->s3));
        return d;
      };
  Eigen::VectorXd theta(1);
  theta[0] = 0.0;
  return qfim_of_family(family, theta).qfim(0, 0);
}

double scenario_loss_qfi(const FockState& probe, double q) {
  ParamFamily family;
  family.evaluator = [probe](const Eigen::VectorXd& theta) {
    return attenuation_channel(probe.basis(), theta[0], Mode::a).apply(probe);
  };
  Eigen::VectorXd theta(1);
  theta[0] = q;
  return qfim_of_family(family, theta).qfim(0, 0);
}

QfimResult scenario_diattenuation_qfim(const FockState& probe, double q,
                                       double r) {
  ParamFamily family;
  family.evaluator = [probe](const Eigen::VectorXd& theta) {
    const Channel loss_a =
        attenuation_channel(probe.basis(), theta[0], Mode::a);
    const Channel loss_b =
        attenuation_channel(probe.basis(), theta[1], Mode::b);
    return loss_b.apply(loss_a.apply(probe));
  };
  Eigen::VectorXd theta(2);
  theta << q, r;
  return qfim_of_family(family, theta);
}

QfimResult scenario_phase_loss_qfim(const FockState& probe, double theta,
                                    double q) {
  // Rotation first, then the loss.
  ParamFamily family;
  family.evaluator = [probe](const Eigen::VectorXd& params) {
    const FockState rotated =
        rotate(probe, params[0], Eigen::Vector3d::UnitZ());
    return attenuation_channel(probe.basis(), params[1], Mode::a)
        .apply(rotated);
  };
  Eigen::VectorXd params(2);
  params << theta, q;
  return qfim_of_family(family, params);
}

}  // namespace polab
