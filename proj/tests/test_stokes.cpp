#include "core/stokes.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace polab;
using namespace polab::testing;

namespace {

// Hand oracle: s_mu = A^dag sigma_mu A / 2 written out elementwise.
StokesVector stokes_by_hand(const JonesVector& v) {
  StokesVector s;
  s.s0 = 0.5 * (std::norm(v.a) + std::norm(v.b));
  s.s1 = 0.5 * (std::conj(v.a) * v.b + std::conj(v.b) * v.a).real();
  const cplx i(0.0, 1.0);
  s.s2 = 0.5 * (-i * (std::conj(v.a) * v.b - std::conj(v.b) * v.a)).real();
  s.s3 = 0.5 * (std::norm(v.a) - std::norm(v.b));
  return s;
}

// Random Stokes vector inside the physical ball.
StokesVector random_valid_stokes(SplitMix64& rng) {
  const double s0 = uniform(rng, 0.1, 3.0);
  const Eigen::Vector3d dir = random_unit_vector(rng);
  const double p = rng.uniform01();
  return {s0, p * s0 * dir[0], p * s0 * dir[1], p * s0 * dir[2]};
}

}  // namespace

TEST_CASE("stokes from jones vector") {
  // Pure right-circular light.
  const StokesVector r = stokes_from_jones_vector({1.0, 0.0});
  CHECK(r.s0 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.s1 == doctest::Approx(0.0));
  CHECK(r.s2 == doctest::Approx(0.0));
  CHECK(r.s3 == doctest::Approx(0.5).epsilon(1e-14));

  // Horizontal linear light: equal circular amplitudes.
  const double inv = 1.0 / std::sqrt(2.0);
  const StokesVector h = stokes_from_jones_vector({inv, inv});
  CHECK(h.s0 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(h.s1 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(h.s2) < 1e-15);
  CHECK(std::abs(h.s3) < 1e-15);

  // (1, i)/sqrt(2): the sign of s2 follows the matrix formula.
  const StokesVector d = stokes_from_jones_vector({inv, cplx(0.0, inv)});
  const StokesVector oracle = stokes_by_hand({inv, cplx(0.0, inv)});
  CHECK(d.s2 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.s1 == doctest::Approx(oracle.s1));
  CHECK(d.s2 == doctest::Approx(oracle.s2));
  CHECK(d.s3 == doctest::Approx(oracle.s3));
}

TEST_CASE("stokes from coherency matrix") {
  CoherencyMatrix identity = CoherencyMatrix::Identity();
  const StokesVector u = stokes_from_coherency(identity);
  CHECK(u.s0 == doctest::Approx(1.0));
  CHECK(u.s1 == doctest::Approx(0.0));

  // Fully polarized matrix with all entries 1 is horizontal light of
  // intensity 1: (1, 1, 0, 0).
  CoherencyMatrix ones;
  ones << 1, 1, 1, 1;
  const StokesVector h = stokes_from_coherency(ones);
  CHECK(h.s0 == doctest::Approx(1.0));
  CHECK(h.s1 == doctest::Approx(1.0));
  CHECK(h.s2 == doctest::Approx(0.0));
  CHECK(h.s3 == doctest::Approx(0.0));

  CoherencyMatrix right = CoherencyMatrix::Zero();
  right(0, 0) = 1.0;
  const StokesVector r = stokes_from_coherency(right);
  CHECK(r.s0 == doctest::Approx(0.5));
  CHECK(r.s3 == doctest::Approx(0.5));

  CoherencyMatrix bad;
  bad << 1.0, cplx(0.2, 0.3), cplx(0.2, 0.2), 1.0;
  CHECK_THROWS_AS(stokes_from_coherency(bad), Error);
}

TEST_CASE("coherency from stokes") {
  const CoherencyMatrix u = coherency_from_stokes({1, 0, 0, 0});
  CHECK((u - CoherencyMatrix::Identity()).norm() < 1e-15);

  const CoherencyMatrix r = coherency_from_stokes({0.5, 0, 0, 0.5});
  CoherencyMatrix expected = CoherencyMatrix::Zero();
  expected(0, 0) = 1.0;
  CHECK((r - expected).norm() < 1e-15);

  const CoherencyMatrix h = coherency_from_stokes({1, 1, 0, 0});
  CoherencyMatrix ones;
  ones << 1, 1, 1, 1;
  CHECK((h - ones).norm() < 1e-15);

  CHECK_THROWS_AS(coherency_from_stokes({1, 1, 1, 1}), Error);
}

TEST_CASE("coherency round trip on random valid inputs") {
  SplitMix64 rng(101);
  for (int i = 0; i < 1000; ++i) {
    const StokesVector s = random_valid_stokes(rng);
    const StokesVector back = stokes_from_coherency(coherency_from_stokes(s));
    CHECK(std::abs(back.s0 - s.s0) < 1e-12);
    CHECK(std::abs(back.s1 - s.s1) < 1e-12);
    CHECK(std::abs(back.s2 - s.s2) < 1e-12);
    CHECK(std::abs(back.s3 - s.s3) < 1e-12);
  }
}

TEST_CASE("degree of polarization") {
  CHECK(degree_of_polarization({1, 0, 0, 0}) == doctest::Approx(0.0));
  CHECK(degree_of_polarization({1, 1, 0, 0}) == doctest::Approx(1.0));
  // 3-4-5 triangle.
  CHECK(degree_of_polarization({1, 0.3, 0, 0.4}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(degree_of_polarization({0, 0, 0, 0}), Error);
}

TEST_CASE("degree of polarization equals the purity expression") {
  SplitMix64 rng(202);
  for (int i = 0; i < 200; ++i) {
    const StokesVector s = random_valid_stokes(rng);
    const CoherencyMatrix psi = coherency_from_stokes(s);
    const CoherencyMatrix normalized = psi / psi.trace().real();
    const double purity = (normalized * normalized).trace().real();
    const double via_purity = std::sqrt(std::max(0.0, 2.0 * purity - 1.0));
    CHECK(std::abs(degree_of_polarization(s) - via_purity) < 1e-12);
  }
}

TEST_CASE("polarized plus unpolarized decomposition") {
  const PolarizationDecomposition d =
      decompose_polarized_unpolarized({1, 0.5, 0, 0});
  CHECK(d.p == doctest::Approx(0.5));
  CHECK(d.direction_defined);
  CHECK(d.theta == doctest::Approx(M_PI / 2));
  CHECK(d.phi == doctest::Approx(0.0));

  const PolarizationDecomposition u =
      decompose_polarized_unpolarized({1, 0, 0, 0});
  CHECK(u.p == doctest::Approx(0.0));
  CHECK_FALSE(u.direction_defined);

  const PolarizationDecomposition pole =
      decompose_polarized_unpolarized({2, 0, 0, 2});
  CHECK(pole.p == doctest::Approx(1.0));
  CHECK(pole.theta == doctest::Approx(0.0));
}

TEST_CASE("decompose then recompose is the identity") {
  SplitMix64 rng(303);
  for (int i = 0; i < 500; ++i) {
    const StokesVector s = random_valid_stokes(rng);
    if (s.polarization_part().norm() < 1e-6) continue;
    const StokesVector back = recompose(decompose_polarized_unpolarized(s));
    CHECK((back.as_vector() - s.as_vector()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("incoherent superposition") {
  const StokesVector depolarized =
      incoherent_superpose({1, 1, 0, 0}, {1, -1, 0, 0});
  CHECK(depolarized.s0 == doctest::Approx(2.0));
  CHECK(depolarized.polarization_part().norm() < 1e-15);

  const StokesVector circular =
      incoherent_superpose({1, 0, 0, 1}, {1, 0, 0, 1});
  CHECK(circular.s3 == doctest::Approx(2.0));

  // Vector-addition oracle.
  const StokesVector mix = incoherent_superpose({1, 1, 0, 0}, {1, 0, 1, 0});
  CHECK(mix.s0 == doctest::Approx(2.0));
  CHECK(mix.s1 == doctest::Approx(1.0));
  CHECK(mix.s2 == doctest::Approx(1.0));
  CHECK(degree_of_polarization(mix) ==
        doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("superposing equal intensities never raises dop above the max") {
  SplitMix64 rng(404);
  for (int i = 0; i < 300; ++i) {
    StokesVector s1 = random_valid_stokes(rng);
    StokesVector s2 = random_valid_stokes(rng);
    s2.s0 = s1.s0;  // shared intensity
    const double cap =
        std::max(degree_of_polarization(s1), degree_of_polarization(s2));
    const double p = degree_of_polarization(incoherent_superpose(s1, s2));
    CHECK(p <= cap + 1e-12);
  }
}

TEST_CASE("stokes validation") {
  CHECK(validate_stokes({1, 0, 0, 0}).valid);
  const StokesValidity bad = validate_stokes({1, 1, 1, 1});
  CHECK_FALSE(bad.valid);
  CHECK(bad.norm_excess == doctest::Approx(2.0));

  const StokesValidity boundary = validate_stokes({1, 1, 0, 0});
  CHECK(boundary.valid);
  CHECK(boundary.boundary);
  CHECK(std::abs(boundary.min_coherency_eigenvalue) < 1e-12);
}
