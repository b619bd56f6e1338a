#include "core/estimation.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace polab;
using namespace polab::testing;

namespace {

constexpr cplx kI{0.0, 1.0};

Eigen::MatrixXcd hermitian_random(int dim, SplitMix64& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = random_complex(rng);
  }
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("symmetric logarithmic derivative basics") {
  const FockBasis basis(4);
  auto ops = stokes_operators(basis);

  // Pure state with a unitary generator: the defining relation holds and
  // the information equals four times the generator variance.
  const FockState psi = su2_coherent(basis, 3, 1.0, 0.4);
  const Eigen::MatrixXcd rho = psi.density_matrix();
  const Eigen::MatrixXcd drho = -kI * (ops->s3 * rho - rho * ops->s3);
  const Eigen::MatrixXcd l = sld(rho, drho);
  CHECK(max_abs(Eigen::MatrixXcd(0.5 * (l * rho + rho * l) - drho)) < 1e-9);
  const QfimResult direct = qfim(rho, {drho});
  const double var =
      expectation(psi, ops->s3 * ops->s3) -
      std::pow(expectation(psi, ops->s3), 2);
  CHECK(direct.qfim(0, 0) == doctest::Approx(4.0 * var).epsilon(1e-9));

  // Vanishing derivative on the maximally mixed layer gives L = 0.
  std::vector<double> beta(5, 0.0);
  beta[4] = 1.0;
  const FockState mixed = isotropic_state(basis, beta);
  CHECK(sld(mixed.density_matrix(),
            Eigen::MatrixXcd::Zero(basis.dim(), basis.dim()))
            .norm() < 1e-14);

  // Diagonal families reduce to the classical score d(log p).
  Eigen::MatrixXcd diag_rho = Eigen::MatrixXcd::Zero(3, 3);
  diag_rho.diagonal() << 0.5, 0.3, 0.2;
  Eigen::MatrixXcd diag_drho = Eigen::MatrixXcd::Zero(3, 3);
  diag_drho.diagonal() << 0.1, -0.04, -0.06;
  const Eigen::MatrixXcd score = sld(diag_rho, diag_drho);
  for (int k = 0; k < 3; ++k) {
    CHECK(score(k, k).real() ==
          doctest::Approx(diag_drho(k, k).real() / diag_rho(k, k).real())
              .epsilon(1e-12));
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) CHECK(std::abs(score(i, j)) < 1e-14);
    }
  }

  CHECK_THROWS_AS(sld(diag_rho, Eigen::MatrixXcd(kI * diag_drho)), Error);
}

TEST_CASE("pure-state shortcut matches the general path") {
  const FockBasis basis(6);
  auto ops = stokes_operators(basis);
  SplitMix64 rng(61);
  for (int trial = 0; trial < 8; ++trial) {
    const int layer = 2 + static_cast<int>(rng.uniform01() * 4);
    const FockState psi = random_layer_state(basis, layer, rng);
    // Random Hermitian layer-diagonal generators so the evolution stays
    // trace preserving.
    std::vector<Eigen::MatrixXcd> generators;
    std::vector<Eigen::MatrixXcd> derivatives;
    const Eigen::MatrixXcd rho = psi.density_matrix();
    for (int g = 0; g < 2; ++g) {
      const Eigen::Vector3d n = random_unit_vector(rng);
      Eigen::MatrixXcd generator =
          n[0] * ops->s1 + n[1] * ops->s2 + n[2] * ops->s3;
      if (g == 1) generator += hermitian_random(basis.dim(), rng) * 0.2;
      generators.push_back(generator);
      derivatives.push_back(-kI * (generator * rho - rho * generator));
    }
    const QfimResult fast = qfim_pure(psi, generators);
    const QfimResult slow = qfim(rho, derivatives);
    CHECK(max_abs(Eigen::MatrixXd(fast.qfim - slow.qfim)) < 1e-8);
  }
}

TEST_CASE("rotation frames") {
  // Second-moment oracle <S_i^2> = S(S+1)/3 for the tetrahedron probe:
  // isotropic covariance 2*id and the scalar bound 3/2.
  const FockBasis basis(4);
  const RotationFrame tet = rotation_frame(
      tetrahedron_state(basis), RotationParametrization::axis_angle,
      Eigen::Vector3d::Zero());
  CHECK(max_abs(Eigen::MatrixXd(tet.covariance -
                                2.0 * Eigen::Matrix3d::Identity())) < 1e-10);
  CHECK(tet.covariance_invertible);
  CHECK(tet.wmse_bound == doctest::Approx(1.5).epsilon(1e-10));
  const double h_energy = 4.0;
  // The computed bound follows 36/(H(H+2)), not the H(H+1) variant.
  CHECK(tet.wmse_bound ==
        doctest::Approx(36.0 / (h_energy * (h_energy + 2.0))).epsilon(1e-10));
  CHECK(std::abs(tet.wmse_bound - 36.0 / (h_energy * (h_energy + 1.0))) > 0.2);
  // At the origin of axis-angle coordinates the generators are the Stokes
  // operators themselves.
  CHECK(max_abs(Eigen::MatrixXd(tet.generator_matrix -
                                Eigen::Matrix3d::Identity())) < 1e-9);
  CHECK(max_abs(Eigen::MatrixXd(tet.qfim - 8.0 * Eigen::Matrix3d::Identity())) <
        1e-8);

  // Balanced two-branch probe: anisotropic covariance, shot-noise bound
  // 4(2H+1)/H^2.
  const RotationFrame noon = rotation_frame(
      noon_state(basis, 4), RotationParametrization::axis_angle,
      Eigen::Vector3d::Zero());
  CHECK(noon.wmse_bound == doctest::Approx(2.25).epsilon(1e-10));

  // Coherent probes have no information about spin about their own axis.
  const RotationFrame coh = rotation_frame(
      su2_coherent(basis, 4, 0.0, 0.0), RotationParametrization::axis_angle,
      Eigen::Vector3d::Zero());
  CHECK_FALSE(coh.covariance_invertible);
  CHECK(std::abs(coh.null_direction[2]) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::isinf(coh.wmse_bound));
}

TEST_CASE("wmse bound is invariant under probe pre-rotation") {
  const FockBasis basis(4);
  SplitMix64 rng(62);
  const FockState probe = tetrahedron_state(basis);
  const double reference =
      rotation_frame(probe, RotationParametrization::axis_angle,
                     Eigen::Vector3d::Zero())
          .wmse_bound;
  for (int trial = 0; trial < 6; ++trial) {
    const FockState rotated =
        rotate(probe, uniform(rng, -3, 3), random_unit_vector(rng));
    const double bound =
        rotation_frame(rotated, RotationParametrization::axis_angle,
                       Eigen::Vector3d::Zero())
            .wmse_bound;
    CHECK(bound == doctest::Approx(reference).epsilon(1e-10));
  }
}

TEST_CASE("parametrization covariance of the rotation information matrix") {
  const FockBasis basis(4);
  const FockState probe = tetrahedron_state(basis);

  SplitMix64 rng(63);
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::Vector3d euler(uniform(rng, 0.3, 1.2), uniform(rng, 0.4, 1.3),
                          uniform(rng, 0.2, 1.0));
    // Map Euler coordinates to the axis-angle vector of the same group
    // element.
    const auto to_axis_angle = [](const Eigen::Vector3d& e) {
      const RotationFactor rf = rotation_params_from_jones(
          rotation_su2(RotationParametrization::euler_zyz, e));
      return Eigen::Vector3d(rf.theta * rf.axis);
    };
    const Eigen::Vector3d axis_angle = to_axis_angle(euler);

    const Eigen::Matrix3d q_euler =
        rotation_frame(probe, RotationParametrization::euler_zyz, euler).qfim;
    const Eigen::Matrix3d q_axis =
        rotation_frame(probe, RotationParametrization::axis_angle, axis_angle)
            .qfim;

    // Numerical Jacobian d(axis-angle)/d(euler).
    Eigen::Matrix3d jac;
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d up = euler, down = euler;
      up[k] += h;
      down[k] -= h;
      jac.col(k) = (to_axis_angle(up) - to_axis_angle(down)) / (2 * h);
    }
    const Eigen::Matrix3d pushed = jac.transpose() * q_axis * jac;
    CHECK(max_abs(Eigen::MatrixXd(pushed - q_euler)) <
          1e-6 * std::max(1.0, max_abs(Eigen::MatrixXd(q_euler))));
  }
}

TEST_CASE("phase scenario closed forms") {
  // Shot-noise scaling for the classical probe.
  const FockBasis big(26);
  const FockState coherent = coherent_polarized(big, 2.0, 0.0, 0.0, 1e-11);
  CHECK(scenario_phase_qfi(coherent) == doctest::Approx(4.0).epsilon(1e-6));

  // Heisenberg scaling for the balanced superposition.
  const FockBasis small(6);
  CHECK(scenario_phase_qfi(noon_state(small, 4)) ==
        doctest::Approx(16.0).epsilon(1e-8));

  // Rotation-invariant states carry no phase information.
  std::vector<double> beta(5, 0.0);
  beta[4] = 1.0;
  CHECK(scenario_phase_qfi(isotropic_state(FockBasis(4), beta)) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("loss scenario closed forms") {
  // Number states: H / (q (1-q)).
  const FockBasis basis(10);
  const double fock_qfi = scenario_loss_qfi(basis_state(basis, 10, 0), 0.9);
  CHECK(fock_qfi == doctest::Approx(10.0 / (0.9 * 0.1)).epsilon(1e-6));

  // Coherent states: H / q.
  const FockBasis big(26);
  const FockState coherent = coherent_polarized(big, 2.0, 0.0, 0.0, 1e-11);
  CHECK(scenario_loss_qfi(coherent, 0.5) == doctest::Approx(8.0).epsilon(1e-6));
}

TEST_CASE("loss information is monotone under extra loss") {
  const FockBasis basis(8);
  const FockState probe = basis_state(basis, 8, 0);
  for (const double q : {0.9, 0.7, 0.5}) {
    const double clean = scenario_loss_qfi(probe, q);
    const FockState damped =
        attenuation_channel(basis, 0.8, Mode::a).apply(probe);
    const double processed = scenario_loss_qfi(damped, q);
    CHECK(processed <= clean + 1e-8);
  }
}

TEST_CASE("diattenuation scenario with a pair of number states") {
  const FockBasis basis(10);
  const FockState pair = basis_state(basis, 5, 5);
  const QfimResult result = scenario_diattenuation_qfim(pair, 0.9, 0.8);
  CHECK(result.qfim(0, 0) ==
        doctest::Approx(5.0 / (0.9 * 0.1)).epsilon(1e-6));
  CHECK(result.qfim(1, 1) ==
        doctest::Approx(5.0 / (0.8 * 0.2)).epsilon(1e-6));
  CHECK(std::abs(result.qfim(0, 1)) < 1e-6 * result.qfim(0, 0));
  // Independent losses on independent modes: jointly saturable.
  CHECK(result.max_commutativity_residual() < 1e-6);
}

TEST_CASE("diattenuation scenario with a polarized coherent probe") {
  // Per-mode coherent-state oracle: independent losses on independent
  // coherent amplitudes give Q = diag(H cos^2(theta/2)/q, H sin^2(theta/2)/r).
  const FockBasis basis(26);
  const double theta = 1.1;
  const FockState probe = coherent_polarized(basis, 2.0, theta, 0.3, 1e-11);
  const QfimResult result = scenario_diattenuation_qfim(probe, 0.7, 0.4);
  const double h = 4.0;
  CHECK(result.qfim(0, 0) ==
        doctest::Approx(h * std::pow(std::cos(theta / 2), 2) / 0.7)
            .epsilon(1e-6));
  CHECK(result.qfim(1, 1) ==
        doctest::Approx(h * std::pow(std::sin(theta / 2), 2) / 0.4)
            .epsilon(1e-6));
  CHECK(std::abs(result.qfim(0, 1)) < 1e-6);
}

TEST_CASE("squeezed-vacuum diattenuation cross term") {
  // Finite-difference oracle: in the small-loss limit the off-diagonal
  // information converges to -H(H+2)/4 (checked at several energies), an
  // H^2/4 coefficient rather than the 3H^2/4 one might guess; frozen here
  // at H = 2.
  const FockBasis basis(20);
  const FockState probe = tmsv_state(basis, std::asinh(1.0), 0.0, 1e-3);
  const QfimResult result = scenario_diattenuation_qfim(probe, 0.995, 0.995);
  const double h = 2.0;
  CHECK(result.qfim(0, 1) ==
        doctest::Approx(-h * (h + 2.0) / 4.0).epsilon(0.05));
  CHECK(result.qfim(0, 1) == result.qfim(1, 0));
}

TEST_CASE("combined phase and loss on a balanced probe") {
  const FockBasis basis(6);
  const QfimResult result =
      scenario_phase_loss_qfim(noon_state(basis, 4), 0.3, 0.9);
  // Diagonal information matrix but a nonvanishing saturability residual:
  // no single measurement reaches both bounds.
  CHECK(result.qfim(0, 0) > 0.0);
  CHECK(result.qfim(1, 1) > 0.0);
  CHECK(result.max_commutativity_residual() > 1e-3);
}

TEST_CASE("finite differences converge at second order") {
  const FockBasis basis(4);
  const FockState probe = noon_state(basis, 4);
  auto ops = stokes_operators(basis);

  const auto evaluator = [&](const Eigen::VectorXd& theta) {
    return rotate(probe, theta[0], Eigen::Vector3d::UnitZ());
  };
  const double theta0 = 0.4;
  const FockState at = evaluator(Eigen::VectorXd::Constant(1, theta0));
  const Eigen::MatrixXcd rho = at.density_matrix();
  const Eigen::MatrixXcd exact = -kI * (ops->s3 * rho - rho * ops->s3);

  const auto central = [&](double h) {
    const Eigen::MatrixXcd hi =
        evaluator(Eigen::VectorXd::Constant(1, theta0 + h)).density_matrix();
    const Eigen::MatrixXcd lo =
        evaluator(Eigen::VectorXd::Constant(1, theta0 - h)).density_matrix();
    return Eigen::MatrixXcd(((hi - lo) / (2 * h)).eval());
  };
  const double err_h = (central(1e-2) - exact).norm();
  const double err_h2 = (central(5e-3) - exact).norm();
  CHECK(err_h / err_h2 == doctest::Approx(4.0).epsilon(0.05));

  // The Richardson-extrapolated stencil used by the family derivative is
  // far more accurate than either raw stencil.
  ParamFamily family;
  family.evaluator = evaluator;
  family.step = 1e-2;
  const Eigen::MatrixXcd extrapolated =
      differentiate(family, Eigen::VectorXd::Constant(1, theta0))[0];
  CHECK((extrapolated - exact).norm() < 1e-2 * err_h2);
}
