#include "core/fock.hpp"

#include <doctest.h>

#include <thread>

#include "test_helpers.hpp"

using namespace polab;
using namespace polab::testing;

namespace {

constexpr cplx kI{0.0, 1.0};

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a,
                            const Eigen::MatrixXcd& b) {
  return a * b - b * a;
}

}  // namespace

TEST_CASE("operator cache is safe under concurrent first use") {
  // Contract: concurrent readers are safe and each basis size is built
  // once; hammer a fresh size from several threads and compare results.
  const int fresh_n_max = 9;
  std::vector<std::thread> workers;
  std::vector<std::shared_ptr<const StokesOperators>> results(8);
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([t, &results] {
      results[static_cast<std::size_t>(t)] =
          stokes_operators(FockBasis(fresh_n_max));
    });
  }
  for (auto& w : workers) w.join();
  for (int t = 1; t < 8; ++t) {
    CHECK(results[static_cast<std::size_t>(t)] == results[0]);
  }
  CHECK(results[0]->n_max == fresh_n_max);
}

TEST_CASE("basis indexing is a layer-contiguous bijection") {
  const FockBasis basis(5);
  CHECK(basis.dim() == 21);
  int expected = 0;
  for (int total = 0; total <= 5; ++total) {
    for (int m = 0; m <= total; ++m) {
      const int idx = basis.index(m, total - m);
      CHECK(idx == expected);
      const auto [mm, nn] = basis.modes(idx);
      CHECK(mm == m);
      CHECK(nn == total - m);
      ++expected;
    }
  }
  CHECK_THROWS_AS(basis.index(3, 3), Error);
}

TEST_CASE("stokes operators satisfy the angular momentum algebra") {
  const FockBasis basis(6);
  auto ops = stokes_operators(basis);

  // <1,0| S3 |1,0> = 1/2.
  const int idx = basis.index(1, 0);
  CHECK(ops->s3(idx, idx).real() == doctest::Approx(0.5));

  // Direct matrix-multiplication oracle for the commutators; the structure
  // constants carry the factor i.
  CHECK(max_abs(commutator(ops->s1, ops->s2) - kI * ops->s3) < 1e-12);
  CHECK(max_abs(commutator(ops->s2, ops->s3) - kI * ops->s1) < 1e-12);
  CHECK(max_abs(commutator(ops->s3, ops->s1) - kI * ops->s2) < 1e-12);
  CHECK(max_abs(commutator(ops->s0, ops->s1)) < 1e-14);
  CHECK(max_abs(commutator(ops->s0, ops->s2)) < 1e-14);
  CHECK(max_abs(commutator(ops->s0, ops->s3)) < 1e-14);

  // Casimir: S^2 = S0 (S0 + 1) on every layer.
  const Eigen::MatrixXcd s_squared =
      ops->s1 * ops->s1 + ops->s2 * ops->s2 + ops->s3 * ops->s3;
  const Eigen::MatrixXcd casimir =
      ops->s0 * (ops->s0 + Eigen::MatrixXcd::Identity(basis.dim(), basis.dim()));
  CHECK(max_abs(s_squared - casimir) < 1e-12);

  for (int i = 0; i < 4; ++i) {
    CHECK(max_abs(ops->component(i) - ops->component(i).adjoint()) < 1e-14);
  }
}

TEST_CASE("su2 coherent states") {
  const FockBasis basis(6);
  const FockState north = su2_coherent(basis, 2, 0.0, 0.0);
  CHECK(std::abs(north.amplitudes()[basis.index(2, 0)] - 1.0) < 1e-14);
  CHECK(stokes_vector(north).s3 == doctest::Approx(1.0));

  const FockState south = su2_coherent(basis, 1, M_PI, 0.0);
  CHECK(std::abs(south.amplitudes()[basis.index(0, 1)] - 1.0) < 1e-14);

  // Eigenstate of S.n with eigenvalue N/2, zero variance along n and N/4
  // across.
  SplitMix64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const double theta = uniform(rng, 0.0, M_PI);
    const double phi = uniform(rng, 0.0, 2 * M_PI);
    const FockState state = su2_coherent(basis, 4, theta, phi);
    const StokesMoments mo = moments(state);
    const Eigen::Vector3d n = direction_vector(theta, phi);
    CHECK(mo.mean.dot(n) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mo.mean.norm() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(n.dot(mo.covariance * n) == doctest::Approx(0.0).epsilon(1e-12));
    // Perpendicular directions carry variance N/4 = 1.
    const Eigen::Vector3d perp = n.unitOrthogonal();
    CHECK(perp.dot(mo.covariance * perp) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dop(state) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(su2_coherent(basis, 7, 0.0, 0.0), Error);
}

TEST_CASE("noon and tetrahedron states") {
  const FockBasis basis(6);
  const FockState noon4 = noon_state(basis, 4);
  const StokesMoments mo = moments(noon4);
  CHECK(mo.mean.norm() < 1e-14);
  CHECK(mo.covariance(2, 2) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(mo.covariance(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mo.covariance(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dop(noon4) == doctest::Approx(0.0));

  // Tetrahedron: isotropic second moments, <S_i^2> = S(S+1)/3 = 2.
  const FockState tet = tetrahedron_state(basis);
  const StokesMoments tet_mo = moments(tet);
  CHECK(tet_mo.mean.norm() < 1e-12);
  CHECK(max_abs(Eigen::MatrixXd(tet_mo.covariance -
                                2.0 * Eigen::Matrix3d::Identity())) < 1e-12);

  // One-photon superposition of antipodal modes is itself a coherent state.
  const FockState noon1 = noon_state(basis, 1);
  CHECK(dop(noon1) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(tetrahedron_state(FockBasis(3)), Error);
}

TEST_CASE("unpolarized layer states satisfy the three amplitude constraints") {
  const FockBasis basis(4);
  for (const FockState& state :
       {noon_state(basis, 4), tetrahedron_state(basis)}) {
    const auto& amp = state.amplitudes();
    const int n_photons = 4;
    double norm = 0.0, weighted = 0.0;
    cplx step = 0.0;
    for (int m = 0; m <= n_photons; ++m) {
      const cplx a = amp[basis.index(m, n_photons - m)];
      norm += std::norm(a);
      weighted += m * std::norm(a);
      if (m >= 1) {
        step += std::conj(a) * amp[basis.index(m - 1, n_photons - m + 1)] *
                std::sqrt(m * (n_photons - m + 1.0));
      }
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(2.0 * weighted == doctest::Approx(n_photons).epsilon(1e-12));
    CHECK(std::abs(step) < 1e-12);
  }
}

TEST_CASE("coherent polarized state") {
  const FockBasis basis(26);
  const FockState state = coherent_polarized(basis, 2.0, 0.0, 0.0);
  auto ops = stokes_operators(basis);
  CHECK(expectation(state, ops->number) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(dop(state) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(state.leakage() < 1e-12);
  // Tight truncation must refuse rather than silently renormalize.
  CHECK_THROWS_AS(coherent_polarized(FockBasis(4), 2.0, 0.0, 0.0), Error);
}

TEST_CASE("two-mode squeezed vacuum") {
  const double zeta = std::asinh(1.0);
  const FockBasis basis(40);
  // Layer weights decay as tanh^(2N); at this truncation the recorded
  // leakage is ~5e-7, so admit it explicitly.
  const FockState state = tmsv_state(basis, zeta, 0.0, 1e-6);
  CHECK(state.leakage() == doctest::Approx(std::pow(0.5, 21)).epsilon(1e-6));
  auto ops = stokes_operators(basis);
  // Mean energy 2 sinh^2(zeta) = 2 up to the truncated tail.
  CHECK(expectation(state, ops->number) == doctest::Approx(2.0).epsilon(5e-5));
  // Equal photon numbers in the two modes: S3 = 0 exactly.
  CHECK(std::abs(stokes_vector(state).s3) < 1e-13);
  CHECK_THROWS_AS(tmsv_state(FockBasis(6), zeta, 0.0), Error);
}

TEST_CASE("isotropic states") {
  const FockBasis basis(8);
  const FockState iso = isotropic_poisson(basis, 1.0, 1e-4);
  // Invariant under any rotation.
  SplitMix64 rng(32);
  for (int i = 0; i < 5; ++i) {
    const FockState rotated =
        rotate(iso, uniform(rng, -3, 3), random_unit_vector(rng));
    CHECK((rotated.density_matrix() - iso.density_matrix()).norm() < 1e-12);
  }
  CHECK_THROWS_AS(isotropic_state(basis, {0.5, 0.4}), Error);  // sums to 0.9
}

TEST_CASE("antipodal two-layer superposition is unpolarized") {
  const FockBasis basis(5);
  const FockState state = noon_inspired(basis, 2, 3, 0.7, 1.3);
  CHECK(moments(state).mean.norm() < 1e-12);
  CHECK(state.trace_norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mixture of antipodal coherent layers has anisotropic variances") {
  const FockBasis basis(3);
  const Eigen::MatrixXcd rho =
      0.5 * su2_coherent(basis, 3, 0.0, 0.0).density_matrix() +
      0.5 * su2_coherent(basis, 3, M_PI, 0.0).density_matrix();
  const FockState mix = FockState::density(basis, rho);
  const StokesMoments mo = moments(mix);
  CHECK(mo.mean.norm() < 1e-13);
  CHECK(mo.covariance(2, 2) == doctest::Approx(9.0 / 4).epsilon(1e-12));
  CHECK(mo.covariance(0, 0) == doctest::Approx(3.0 / 4).epsilon(1e-12));
  CHECK(mo.covariance(1, 1) == doctest::Approx(3.0 / 4).epsilon(1e-12));
}

TEST_CASE("rotations") {
  const FockBasis basis(6);

  // Rotation operators are block-diagonal unitaries.
  SplitMix64 rng(33);
  for (int i = 0; i < 5; ++i) {
    const double theta = uniform(rng, -3, 3);
    const Eigen::Vector3d n = random_unit_vector(rng);
    const Eigen::MatrixXcd r = rotation_operator(basis, theta, n);
    CHECK(max_abs(Eigen::MatrixXcd(
              r * r.adjoint() -
              Eigen::MatrixXcd::Identity(basis.dim(), basis.dim()))) < 1e-10);
    for (int row = 0; row < basis.dim(); ++row) {
      for (int col = 0; col < basis.dim(); ++col) {
        const auto [m1, n1] = basis.modes(row);
        const auto [m2, n2] = basis.modes(col);
        if (m1 + n1 != m2 + n2) CHECK(std::abs(r(row, col)) < 1e-14);
      }
    }
  }

  // A coherent state rotates to the coherent state of the rotated direction.
  const FockState north = su2_coherent(basis, 4, 0.0, 0.0);
  const FockState rotated = rotate(north, M_PI / 2, Eigen::Vector3d::UnitX());
  const Eigen::Vector3d target =
      rotation3(M_PI / 2, Eigen::Vector3d::UnitX()) * Eigen::Vector3d::UnitZ();
  const double theta_t = std::acos(std::clamp(target[2], -1.0, 1.0));
  const double phi_t = std::atan2(target[1], target[0]);
  CHECK(overlap(rotated, su2_coherent(basis, 4, theta_t, phi_t)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Stokes means push through the classical rotation matrix.
  for (int i = 0; i < 10; ++i) {
    const double theta = uniform(rng, -3, 3);
    const Eigen::Vector3d n = random_unit_vector(rng);
    const FockState state = random_density(basis, rng);
    const Eigen::Vector3d before = moments(state).mean;
    const Eigen::Vector3d after = moments(rotate(state, theta, n)).mean;
    CHECK((after - rotation3(theta, n) * before).norm() < 1e-10);
  }

  // Two orthogonal-looking states that interconvert under a rotation.
  const FockState klyshko = rotate(basis_state(basis, 1, 1), M_PI / 2,
                                   Eigen::Vector3d::UnitX());
  CHECK(overlap(klyshko, noon_state(basis, 2)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("husimi function values") {
  const FockBasis basis(4);
  const FockState state = su2_coherent(basis, 3, 0.9, 2.1);
  CHECK(husimi_q(state, 0.9, 2.1, 3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(husimi_q(state, M_PI - 0.9, 2.1 + M_PI, 3) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Amplitude-contraction oracle at a star position of the two-photon
  // balanced superposition.
  const FockState noon2 = noon_state(basis, 2);
  const FockState probe = su2_coherent(basis, 2, M_PI / 2, M_PI / 2);
  cplx amp = 0.0;
  for (int m = 0; m <= 2; ++m) {
    amp += std::conj(probe.amplitudes()[basis.index(m, 2 - m)]) *
           noon2.amplitudes()[basis.index(m, 2 - m)];
  }
  CHECK(husimi_q(noon2, M_PI / 2, M_PI / 2, 2) ==
        doctest::Approx(std::norm(amp)).epsilon(1e-12));
}

TEST_CASE("photon subset traces") {
  const FockBasis basis(6);

  // Coherent states reduce to coherent states.
  const FockState coh = su2_coherent(basis, 3, 1.0, 0.5);
  const FockState reduced = partial_trace_one_photon(coh);
  CHECK((reduced.density_matrix() -
         su2_coherent(basis, 2, 1.0, 0.5).density_matrix())
            .norm() < 1e-13);

  // Maximally mixed layers reduce to maximally mixed layers.
  std::vector<double> beta(7, 0.0);
  beta[6] = 1.0;
  const FockState iso = isotropic_state(basis, beta);
  const FockState iso_reduced = partial_trace_one_photon(iso);
  std::vector<double> beta5(6, 0.0);
  beta5[5] = 1.0;
  CHECK((iso_reduced.density_matrix() -
         isotropic_state(basis, beta5).density_matrix())
            .norm() < 1e-13);

  // Per-photon Stokes parameters are invariant under reduction.
  SplitMix64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const FockState rho = random_layer_density(basis, 6, rng);
    const StokesVector full = stokes_vector(rho);
    for (int m = 1; m <= 5; ++m) {
      const FockState cut = reduce_to(rho, m);
      CHECK(cut.trace_norm() == doctest::Approx(1.0).epsilon(1e-12));
      // Positivity survives.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cut.density_matrix());
      CHECK(es.eigenvalues().minCoeff() > -1e-12);
      const StokesVector s = stokes_vector(cut);
      CHECK(std::abs(s.s1 / m - full.s1 / 6) < 1e-10);
      CHECK(std::abs(s.s2 / m - full.s2 / 6) < 1e-10);
      CHECK(std::abs(s.s3 / m - full.s3 / 6) < 1e-10);
    }
  }

  CHECK_THROWS_AS(partial_trace_one_photon(basis_state(basis, 0, 0)), Error);
}

TEST_CASE("uncertainty diagnostics") {
  const FockBasis basis(8);

  // Coherent-state moment oracle: zero variance along the polarization
  // axis, N/4 across, so the sum saturates at <S0>.
  for (int n = 1; n <= 8; ++n) {
    const UncertaintyReport rep =
        uncertainty_report(su2_coherent(basis, n, 1.2, 0.3));
    CHECK(std::abs(rep.sum_bound_margin) < 1e-12);
  }

  // Direct moments for the balanced two-mode basis state: every transverse
  // second moment equals 1, so the variance sum is 2.
  const UncertaintyReport rep11 = uncertainty_report(basis_state(basis, 1, 1));
  CHECK(rep11.var_s3 == doctest::Approx(0.0));
  CHECK(rep11.var_s1 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rep11.var_s2 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rep11.sum_bound_margin ==
        doctest::Approx(1.0).epsilon(1e-12));  // 2 - <S0> = 1
  CHECK(rep11.product_bound_margin ==
        doctest::Approx(4.0).epsilon(1e-12));  // <S3> = 0

  const UncertaintyReport vac = uncertainty_report(basis_state(basis, 0, 0));
  CHECK(vac.s0_mean == doctest::Approx(0.0));
  CHECK(std::abs(vac.sum_bound_margin) < 1e-14);
  CHECK(std::abs(vac.product_bound_margin) < 1e-14);
}

TEST_CASE("measurement operators") {
  const FockBasis basis(5);
  const int n_photons = 4;

  // Rotated projectors stay complete on their layer.
  SplitMix64 rng(35);
  for (int trial = 0; trial < 4; ++trial) {
    const double theta = uniform(rng, -3, 3);
    const Eigen::Vector3d axis = random_unit_vector(rng);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
    for (int m = 0; m <= n_photons; ++m) {
      sum += projector_rotated(basis, n_photons, m, theta, axis);
    }
    Eigen::MatrixXcd layer = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
    for (int m = 0; m <= n_photons; ++m) {
      const int idx = basis.index(m, n_photons - m);
      layer(idx, idx) = 1.0;
    }
    CHECK(max_abs(Eigen::MatrixXcd(sum - layer)) < 1e-12);
  }

  // The cyclic relative-phase ladder is unitary on its layer.
  const Eigen::MatrixXcd e = relative_phase_shift(basis, n_photons);
  Eigen::MatrixXcd layer = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (int m = 0; m <= n_photons; ++m) {
    const int idx = basis.index(m, n_photons - m);
    layer(idx, idx) = 1.0;
  }
  CHECK(max_abs(Eigen::MatrixXcd(e * e.adjoint() - layer)) < 1e-13);
  CHECK(max_abs(Eigen::MatrixXcd(e.adjoint() * e - layer)) < 1e-13);

  // Normal-ordering oracle: a^dag^N a^N |N,0> = N! |N,0>.
  const Eigen::MatrixXcd w = intensity_correlation(basis, n_photons, n_photons);
  const FockState top = basis_state(basis, n_photons, 0);
  CHECK(expectation(top, w) == doctest::Approx(24.0).epsilon(1e-12));

  // S3^l on an eigenstate.
  const Eigen::MatrixXcd t2 = stokes_power(basis, 2);
  CHECK(expectation(basis_state(basis, 3, 1), t2) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("anticoherence order") {
  const FockBasis basis(4);
  CHECK(anticoherence_order(su2_coherent(basis, 4, 0.3, 0.2), 3) == 0);
  CHECK(anticoherence_order(noon_state(basis, 4), 3) == 1);
  CHECK(anticoherence_order(tetrahedron_state(basis), 3) == 2);

  // Moment-grid oracle for the three distinguished directions of the
  // balanced superposition: second moments differ between the axis and the
  // equator.
  auto ops = stokes_operators(basis);
  const FockState noon4 = noon_state(basis, 4);
  const double along = expectation(noon4, ops->s3 * ops->s3);
  const double across = expectation(noon4, ops->s1 * ops->s1);
  CHECK(std::abs(along - across) > 1.0);
}

TEST_CASE("perfect polarization criterion") {
  const FockBasis basis(24);
  const FockState coherent = coherent_polarized(basis, 1.7, 1.1, 0.8, 1e-9);
  const PerfectPolarizationReport rep = perfect_polarization_test(coherent);
  CHECK(rep.perfectly_polarized);
  CHECK(rep.orthogonal_mode_occupation < 1e-10);

  // A mixed diagonal-in-photon-number combination of aligned coherent
  // layers stays perfectly polarized.
  const FockBasis small(5);
  Eigen::MatrixXcd rho =
      0.4 * su2_coherent(small, 2, 0.6, 0.9).density_matrix() +
      0.6 * su2_coherent(small, 5, 0.6, 0.9).density_matrix();
  const PerfectPolarizationReport mixed =
      perfect_polarization_test(FockState::density(small, rho));
  CHECK(mixed.perfectly_polarized);
  CHECK(mixed.dop_value == doctest::Approx(1.0).epsilon(1e-10));

  const PerfectPolarizationReport noon_rep =
      perfect_polarization_test(noon_state(small, 2));
  CHECK_FALSE(noon_rep.perfectly_polarized);
  CHECK(noon_rep.dop_value == doctest::Approx(0.0));
}
