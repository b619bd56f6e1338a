#include "core/majorana.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace polab;
using namespace polab::testing;

namespace {

Star random_star(SplitMix64& rng) {
  const Eigen::Vector3d dir = random_unit_vector(rng);
  Star s;
  s.theta = std::acos(std::clamp(dir[2], -1.0, 1.0));
  s.phi = std::atan2(dir[1], dir[0]);
  if (s.phi < 0) s.phi += 2 * M_PI;
  return s;
}

}  // namespace

TEST_CASE("coherent states have one degenerate star at their direction") {
  const FockBasis basis(6);
  const double theta = 1.1, phi = 2.3;
  const MajoranaConstellation stars =
      majorana_stars(su2_coherent(basis, 4, theta, phi));
  REQUIRE(stars.size() == 4);
  const Star target{theta, phi};
  for (const auto& star : stars) {
    // A fourfold companion-matrix root carries ~eps^(1/4) scatter.
    CHECK(angular_distance(star, target) < 5e-4);
  }
}

TEST_CASE("balanced superpositions spread their stars on the equator") {
  const FockBasis basis(6);
  const MajoranaConstellation stars = majorana_stars(noon_state(basis, 4));
  REQUIRE(stars.size() == 4);
  for (const auto& star : stars) {
    CHECK(std::abs(star.theta - M_PI / 2) < 1e-7);
  }
  // Azimuths are equally spaced by pi/2.
  std::vector<double> phis;
  for (const auto& star : stars) phis.push_back(star.phi);
  std::sort(phis.begin(), phis.end());
  for (std::size_t k = 1; k < phis.size(); ++k) {
    CHECK(phis[k] - phis[k - 1] == doctest::Approx(M_PI / 2).epsilon(1e-7));
  }
}

TEST_CASE("tetrahedron constellation") {
  const FockBasis basis(4);
  const MajoranaConstellation stars = majorana_stars(tetrahedron_state(basis));
  REQUIRE(stars.size() == 4);
  // Root-finding oracle: pairwise separations of a regular tetrahedron.
  for (std::size_t i = 0; i < stars.size(); ++i) {
    for (std::size_t j = i + 1; j < stars.size(); ++j) {
      CHECK(std::abs(angular_distance(stars[i], stars[j]) -
                     std::acos(-1.0 / 3.0)) < 1e-6);
    }
  }
}

TEST_CASE("poles and deficits") {
  const FockBasis basis(5);
  // All photons in the left-circular mode: five stars at the south pole.
  const MajoranaConstellation south =
      majorana_stars(basis_state(basis, 0, 5));
  REQUIRE(south.size() == 5);
  for (const auto& star : south) CHECK(star.theta == doctest::Approx(M_PI));

  // |1,1>: antipodal pair.
  const MajoranaConstellation pair = majorana_stars(basis_state(basis, 1, 1));
  REQUIRE(pair.size() == 2);
  CHECK(pair.front().theta == doctest::Approx(0.0));
  CHECK(pair.back().theta == doctest::Approx(M_PI));

  CHECK(majorana_stars(basis_state(basis, 0, 0)).empty());
  CHECK_THROWS_AS(majorana_stars(noon_inspired(basis, 2, 3, 0.1, 0.2)), Error);
}

TEST_CASE("round trip from stars and back") {
  const FockBasis basis(8);
  SplitMix64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n_photons = 1 + static_cast<int>(rng.uniform01() * 8);
    MajoranaConstellation stars;
    for (int k = 0; k < n_photons; ++k) stars.push_back(random_star(rng));
    const FockState state = state_from_stars(basis, stars);
    const FockState back = state_from_stars(basis, majorana_stars(state));
    CHECK(overlap(state, back) > 1.0 - 1e-8);
  }

  // Random pure layer states round trip through their constellations.
  for (int trial = 0; trial < 50; ++trial) {
    const int n_photons = 1 + static_cast<int>(rng.uniform01() * 8);
    const FockState state = random_layer_state(basis, n_photons, rng);
    const FockState back = state_from_stars(basis, majorana_stars(state));
    CHECK(overlap(state, back) > 1.0 - 1e-8);
  }

  // Degenerate-root cases.
  const FockState coherent = su2_coherent(basis, 6, 0.8, 1.9);
  CHECK(overlap(coherent, state_from_stars(basis, majorana_stars(coherent))) >
        1.0 - 1e-8);
  MajoranaConstellation twice_double = {{0.4, 1.0}, {0.4, 1.0}, {2.0, 5.0},
                                        {2.0, 5.0}};
  const FockState deg = state_from_stars(basis, twice_double);
  CHECK(overlap(deg, state_from_stars(basis, majorana_stars(deg))) >
        1.0 - 1e-8);
}

TEST_CASE("constellations rotate rigidly") {
  const FockBasis basis(8);
  SplitMix64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const int n_photons = 2 + static_cast<int>(rng.uniform01() * 6);
    const FockState state = random_layer_state(basis, n_photons, rng);
    const double theta = uniform(rng, -3, 3);
    const Eigen::Vector3d axis = random_unit_vector(rng);

    const MajoranaConstellation before = majorana_stars(state);
    const MajoranaConstellation after =
        majorana_stars(rotate(state, theta, axis));

    const Eigen::Matrix3d r = rotation3(theta, axis);
    MajoranaConstellation moved;
    for (const auto& star : before) {
      const Eigen::Vector3d dir = r * star.direction();
      Star s;
      s.theta = std::acos(std::clamp(dir[2], -1.0, 1.0));
      s.phi = std::atan2(dir[1], dir[0]);
      moved.push_back(s);
    }
    CHECK(constellation_distance(moved, after) < 1e-6);
  }
}

TEST_CASE("single star state is the matching coherent state") {
  const FockBasis basis(4);
  const FockState one = state_from_stars(basis, {{1.3, 0.7}});
  CHECK(overlap(one, su2_coherent(basis, 1, 1.3, 0.7)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}
