#pragma once

#include <Eigen/Dense>

#include "core/common.hpp"

// Classical polarization states.
//
// Conventions used throughout the library:
//  * Stokes parameters carry the half-photon-number normalization,
//    S0 = (|a|^2 + |b|^2)/2 and so on, so that the quantum Stokes operators
//    obey angular-momentum algebra.  This factor of 2 relative to the more
//    common optics convention is applied everywhere, never mixed.
//  * The Jones basis is circular: component `a` is right-circular,
//    component `b` is left-circular, with e_R = (x - iy)/sqrt(2).  In this
//    basis sigma_3 = diag(1, -1) and horizontally polarized light
//    (a = b = 1/sqrt(2)) has Stokes vector (1/2, 1/2, 0, 0).

namespace polab {

struct StokesVector {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  Eigen::Vector3d polarization_part() const { return {s1, s2, s3}; }
  Eigen::Vector4d as_vector() const { return {s0, s1, s2, s3}; }
  static StokesVector from_vector(const Eigen::Vector4d& v) {
    return {v[0], v[1], v[2], v[3]};
  }
};

// 2x2 complex coherency matrix; Hermitian PSD for physical light.
using CoherencyMatrix = Eigen::Matrix2cd;

struct JonesVector {
  cplx a{0.0, 0.0};  // right-circular amplitude
  cplx b{0.0, 0.0};  // left-circular amplitude
};

// Split of a partially polarized beam into a perfectly polarized part of
// weight p pointing along (theta, phi) on the Poincare sphere plus an
// unpolarized remainder of weight 1-p, both with intensity s0.
struct PolarizationDecomposition {
  double p = 0.0;
  double theta = 0.0;  // in [0, pi]
  double phi = 0.0;    // in [0, 2*pi)
  double intensity = 0.0;
  bool direction_defined = false;  // false when p == 0
};

struct StokesValidity {
  bool s0_nonnegative = false;
  // s1^2+s2^2+s3^2 - s0^2; <= 0 for physical light (up to tolerance).
  double norm_excess = 0.0;
  // Minimum eigenvalue of the associated coherency matrix.
  double min_coherency_eigenvalue = 0.0;
  bool valid = false;
  // True when |S| = s0 within tolerance (fully polarized boundary).
  bool boundary = false;
};

// Pauli matrices sigma_0..sigma_3 in the circular basis.
const Eigen::Matrix2cd& pauli(int mu);

StokesVector stokes_from_jones_vector(const JonesVector& v);

// s_mu = Tr(Psi sigma_mu) / 2.  Rejects inputs that are not Hermitian
// within `tol`.
StokesVector stokes_from_coherency(const CoherencyMatrix& psi,
                                   double tol = kDefaultTol);

// Psi = sum_mu s_mu sigma_mu; inverse of stokes_from_coherency.
CoherencyMatrix coherency_from_stokes(const StokesVector& s,
                                      double tol = kDefaultTol);

// |S| / s0 in [0, 1]; fails when s0 == 0.
double degree_of_polarization(const StokesVector& s);

PolarizationDecomposition decompose_polarized_unpolarized(
    const StokesVector& s, double tol = kDefaultTol);

// Reassembles p * S_pol + (1 - p) * S_unpol.
StokesVector recompose(const PolarizationDecomposition& d);

StokesVector incoherent_superpose(const StokesVector& s1,
                                  const StokesVector& s2);

StokesValidity validate_stokes(const StokesVector& s, double tol = kDefaultTol);

// Unit vector (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)).
Eigen::Vector3d direction_vector(double theta, double phi);

}  // namespace polab
