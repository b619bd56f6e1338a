#pragma once

#include <vector>

#include "core/fock.hpp"

// Stellar representation of pure fixed-N states: N points on the Poincare
// sphere obtained from the roots of the amplitude polynomial
// P(z) = sum_m psi_m sqrt(C(N,m)) z^m.  A star sits at the direction whose
// single-mode creation operator appears in the product form of the state,
// so an SU(2)-coherent state along Omega maps to one N-fold degenerate star
// at Omega itself.  Degree deficits (vanishing leading amplitudes) place
// stars at the south pole.

namespace polab {

struct Star {
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector3d direction() const { return direction_vector(theta, phi); }
};

using MajoranaConstellation = std::vector<Star>;

// Companion-matrix roots; nearby roots are merged to their centroid at
// relative tolerance 1e-7 so degenerate stars come out exactly repeated.
MajoranaConstellation majorana_stars(const FockState& state);

// Rebuilds the pure layer-N state from its N stars (N = stars.size()),
// normalized, with an arbitrary global phase.
FockState state_from_stars(const FockBasis& basis,
                           const MajoranaConstellation& stars);

// Angular separation of two points on the sphere.
double angular_distance(const Star& a, const Star& b);

// Greedy matching distance between two constellations: maximum angular
// distance after pairing each star of `a` with its closest unused partner
// in `b`.
double constellation_distance(const MajoranaConstellation& a,
                              const MajoranaConstellation& b);

}  // namespace polab
