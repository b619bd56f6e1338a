#include "core/stokes.hpp"

#include <cmath>
#include <cstdio>

namespace polab {

namespace {
constexpr cplx kI{0.0, 1.0};
}

std::string format_scalar(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", value);
  return buf;
}

const Eigen::Matrix2cd& pauli(int mu) {
  static const std::array<Eigen::Matrix2cd, 4> sigma = [] {
    std::array<Eigen::Matrix2cd, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -kI, kI, 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  if (mu < 0 || mu > 3) fail_argument("pauli index must be in 0..3");
  return sigma[static_cast<std::size_t>(mu)];
}

Eigen::Vector3d direction_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

StokesVector stokes_from_jones_vector(const JonesVector& v) {
  // s_mu = A^dag sigma_mu A / 2 with A = (a, b).
  const double aa = std::norm(v.a);
  const double bb = std::norm(v.b);
  const cplx ab = std::conj(v.a) * v.b;
  return {0.5 * (aa + bb), ab.real(), ab.imag(), 0.5 * (aa - bb)};
}

StokesVector stokes_from_coherency(const CoherencyMatrix& psi, double tol) {
  const double herm = (psi - psi.adjoint()).norm();
  if (herm > tol * std::max(1.0, psi.norm())) {
    fail_physical("coherency matrix is not Hermitian (deviation " +
                  format_scalar(herm) + ")");
  }
  StokesVector s;
  s.s0 = 0.5 * (psi * pauli(0)).trace().real();
  s.s1 = 0.5 * (psi * pauli(1)).trace().real();
  s.s2 = 0.5 * (psi * pauli(2)).trace().real();
  s.s3 = 0.5 * (psi * pauli(3)).trace().real();
  return s;
}

CoherencyMatrix coherency_from_stokes(const StokesVector& s, double tol) {
  const StokesValidity report = validate_stokes(s, tol);
  if (!report.valid) {
    fail_physical("invalid Stokes vector: norm excess " +
                  format_scalar(report.norm_excess));
  }
  return s.s0 * pauli(0) + s.s1 * pauli(1) + s.s2 * pauli(2) + s.s3 * pauli(3);
}

double degree_of_polarization(const StokesVector& s) {
  if (s.s0 <= 0.0) fail_physical("degree of polarization undefined for s0 <= 0");
  return s.polarization_part().norm() / s.s0;
}

PolarizationDecomposition decompose_polarized_unpolarized(
    const StokesVector& s, double tol) {
  if (s.s0 <= 0.0) fail_physical("decomposition undefined for s0 <= 0");
  PolarizationDecomposition d;
  d.intensity = s.s0;
  const Eigen::Vector3d vec = s.polarization_part();
  const double len = vec.norm();
  d.p = len / s.s0;
  if (len <= tol * s.s0) {
    // Unpolarized: the direction carries no information.
    d.p = (len == 0.0) ? 0.0 : d.p;
    d.direction_defined = false;
    return d;
  }
  d.direction_defined = true;
  d.theta = std::acos(std::clamp(vec[2] / len, -1.0, 1.0));
  d.phi = std::atan2(vec[1], vec[0]);
  if (d.phi < 0.0) d.phi += 2.0 * M_PI;
  return d;
}

StokesVector recompose(const PolarizationDecomposition& d) {
  if (!d.direction_defined) return {d.intensity, 0.0, 0.0, 0.0};
  const Eigen::Vector3d n = direction_vector(d.theta, d.phi);
  const Eigen::Vector3d vec = d.p * d.intensity * n;
  return {d.intensity, vec[0], vec[1], vec[2]};
}

StokesVector incoherent_superpose(const StokesVector& s1,
                                  const StokesVector& s2) {
  return {s1.s0 + s2.s0, s1.s1 + s2.s1, s1.s2 + s2.s2, s1.s3 + s2.s3};
}

StokesValidity validate_stokes(const StokesVector& s, double tol) {
  StokesValidity r;
  r.s0_nonnegative = s.s0 >= -tol;
  const double norm2 = s.polarization_part().squaredNorm();
  r.norm_excess = norm2 - s.s0 * s.s0;
  // Equivalent eigenvalue test: the coherency matrix sum_mu s_mu sigma_mu
  // has eigenvalues s0 +- |S|.
  r.min_coherency_eigenvalue = s.s0 - std::sqrt(std::max(norm2, 0.0));
  const double scale = std::max(1.0, s.s0 * s.s0);
  r.valid = r.s0_nonnegative && r.norm_excess <= tol * scale;
  r.boundary = r.valid && std::abs(r.norm_excess) <= tol * scale;
  return r;
}

}  // namespace polab
