#include "core/mueller.hpp"

#include <cmath>

namespace polab {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_unit_axis(const Eigen::Vector3d& n) {
  if (std::abs(n.norm() - 1.0) > 1e-9) {
    fail_argument("axis must be a unit vector (|n| = " +
                  std::to_string(n.norm()) + ")");
  }
}

Eigen::Matrix2cd axis_dot_sigma(const Eigen::Vector3d& n) {
  return n[0] * pauli(1) + n[1] * pauli(2) + n[2] * pauli(3);
}

}  // namespace

MuellerMatrix mueller_from_jones(const JonesMatrix& j) {
  MuellerMatrix m;
  const Eigen::Matrix2cd jd = j.adjoint();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      m(mu, nu) = 0.5 * (pauli(mu) * j * pauli(nu) * jd).trace().real();
    }
  }
  return m;
}

MuellerMatrix mueller_from_jones_mixture(const std::vector<double>& weights,
                                         const std::vector<JonesMatrix>& js) {
  if (weights.empty() || js.empty()) fail_argument("empty Jones mixture");
  if (weights.size() != js.size()) {
    fail_argument("mixture weight/matrix count mismatch");
  }
  MuellerMatrix m = MuellerMatrix::Zero();
  for (std::size_t i = 0; i < js.size(); ++i) {
    m += weights[i] * mueller_from_jones(js[i]);
  }
  return m;
}

JonesMatrix jones_rotation(double theta, const Eigen::Vector3d& n) {
  require_unit_axis(n);
  return std::cos(0.5 * theta) * pauli(0) -
         kI * std::sin(0.5 * theta) * axis_dot_sigma(n);
}

JonesMatrix jones_boost(double eta, const Eigen::Vector3d& n) {
  require_unit_axis(n);
  return std::cosh(0.5 * eta) * pauli(0) +
         std::sinh(0.5 * eta) * axis_dot_sigma(n);
}

Eigen::Matrix3d rotation3(double theta, const Eigen::Vector3d& n) {
  require_unit_axis(n);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix3d r;
  // Cross-product matrix K_ij = sum_k eps_ijk n_k.
  Eigen::Matrix3d k;
  k << 0, n[2], -n[1], -n[2], 0, n[0], n[1], -n[0], 0;
  r = c * Eigen::Matrix3d::Identity() - s * k + (1.0 - c) * n * n.transpose();
  return r;
}

Eigen::Matrix3d rotation3_taking(const Eigen::Vector3d& from,
                                 const Eigen::Vector3d& to) {
  require_unit_axis(from);
  require_unit_axis(to);
  const Eigen::Vector3d cross = from.cross(to);
  const double sin_angle = cross.norm();
  const double cos_angle = from.dot(to);
  if (sin_angle < 1e-14) {
    if (cos_angle > 0.0) return Eigen::Matrix3d::Identity();
    // Antipodal: rotate by pi about any orthogonal axis.
    Eigen::Vector3d ortho = from.unitOrthogonal();
    return rotation3(M_PI, ortho);
  }
  return rotation3(std::atan2(sin_angle, cos_angle), cross / sin_angle);
}

MuellerMatrix mueller_rotation(const Eigen::Matrix3d& r) {
  MuellerMatrix m = MuellerMatrix::Identity();
  m.block<3, 3>(1, 1) = r;
  return m;
}

MuellerMatrix mueller_rotation(double theta, const Eigen::Vector3d& n) {
  return mueller_rotation(rotation3(theta, n));
}

MuellerMatrix mueller_diattenuation(double q, double r,
                                    const Eigen::Vector3d& n) {
  if (q < 0.0 || q > 1.0 || r < 0.0 || r > 1.0) {
    fail_argument("diattenuation transmissions must lie in [0, 1]");
  }
  require_unit_axis(n);
  MuellerMatrix axis_aligned = MuellerMatrix::Zero();
  const double sum = 0.5 * (q + r);
  const double diff = 0.5 * (q - r);
  const double geo = std::sqrt(q * r);
  axis_aligned(0, 0) = sum;
  axis_aligned(0, 3) = diff;
  axis_aligned(3, 0) = diff;
  axis_aligned(3, 3) = sum;
  axis_aligned(1, 1) = geo;
  axis_aligned(2, 2) = geo;
  const Eigen::Matrix3d to_z = rotation3_taking(n, Eigen::Vector3d::UnitZ());
  return mueller_rotation(to_z.transpose()) * axis_aligned *
         mueller_rotation(to_z);
}

std::pair<double, JonesMatrix> scale_factor_decompose(const JonesMatrix& j,
                                                      double tol) {
  const cplx det = j.determinant();
  if (std::abs(det) <= tol * std::max(1.0, j.squaredNorm())) {
    fail_physical("limiting case, det J = 0: no scale/SL(2,C) split exists");
  }
  const double t = std::sqrt(std::abs(det));
  const cplx root = std::sqrt(det);
  return {t, j / root};
}

namespace {

// Hermitian square root of a positive definite 2x2 matrix.
JonesMatrix hermitian_sqrt(const JonesMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
  Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

PolarFactors polar_decompose(const JonesMatrix& j_sl, double tol) {
  const cplx det = j_sl.determinant();
  if (std::abs(det - cplx(1.0, 0.0)) > 1e-8) {
    fail_argument("polar decomposition expects det J = 1, got |det - 1| = " +
                  std::to_string(std::abs(det - cplx(1.0, 0.0))));
  }
  PolarFactors f;
  const JonesMatrix p = hermitian_sqrt(j_sl.adjoint() * j_sl);
  if (std::abs(p.determinant()) < tol) {
    fail_physical("singular polar factor: J is a limiting (det 0) case");
  }
  f.boost_right = p;
  f.rotation = j_sl * p.inverse();
  f.boost_left = f.rotation * p * f.rotation.adjoint();
  return f;
}

RotationFactor rotation_params_from_jones(const JonesMatrix& u) {
  // u = cos(t/2) I - i sin(t/2) n.sigma up to numerical noise.
  RotationFactor rf;
  const double c = std::clamp(0.5 * u.trace().real(), -1.0, 1.0);
  rf.theta = 2.0 * std::acos(c);
  const double s = std::sin(0.5 * rf.theta);
  if (std::abs(s) < 1e-12) {
    rf.theta = 0.0;
    rf.axis = Eigen::Vector3d::UnitZ();
    return rf;
  }
  for (int k = 0; k < 3; ++k) {
    rf.axis[k] = -(pauli(k + 1) * u).trace().imag() / (2.0 * s);
  }
  rf.axis.normalize();
  return rf;
}

RotationFactor rotation_params_from_matrix(const Eigen::Matrix3d& r) {
  RotationFactor rf;
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  rf.theta = std::acos(c);
  const double s = std::sin(rf.theta);
  if (std::abs(s) < 1e-9) {
    if (c > 0.0) {
      rf.theta = 0.0;
      rf.axis = Eigen::Vector3d::UnitZ();
    } else {
      // theta = pi: axis from the symmetric part.
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(
          0.5 * (r + Eigen::Matrix3d::Identity()));
      rf.axis = es.eigenvectors().col(2).normalized();
      rf.theta = M_PI;
    }
    return rf;
  }
  // R - R^T = -2 sin(t) K(n) with our Rodrigues sign convention.
  rf.axis[0] = (r(2, 1) - r(1, 2)) / (2.0 * s);
  rf.axis[1] = (r(0, 2) - r(2, 0)) / (2.0 * s);
  rf.axis[2] = (r(1, 0) - r(0, 1)) / (2.0 * s);
  rf.axis.normalize();
  return rf;
}

BoostFactor boost_params_from_jones(const JonesMatrix& h) {
  BoostFactor bf;
  const double c = std::max(0.5 * h.trace().real(), 1.0);
  bf.eta = 2.0 * std::acosh(c);
  const double s = std::sinh(0.5 * bf.eta);
  if (std::abs(s) < 1e-12) {
    bf.eta = 0.0;
    bf.axis = Eigen::Vector3d::UnitZ();
    return bf;
  }
  for (int k = 0; k < 3; ++k) {
    bf.axis[k] = (pauli(k + 1) * h).trace().real() / (2.0 * s);
  }
  bf.axis.normalize();
  return bf;
}

MuellerMatrix depolarizer(const Eigen::Vector3d& p_vec,
                          const Eigen::Matrix3d& m_mat) {
  if (p_vec.norm() > 1.0 + 1e-12) {
    fail_argument("depolarizer polarizance must satisfy |p| <= 1");
  }
  MuellerMatrix m = MuellerMatrix::Zero();
  m(0, 0) = 1.0;
  m.block<3, 1>(1, 0) = p_vec;
  m.block<3, 3>(1, 1) = m_mat;
  return m;
}

LuChipmanFactors lu_chipman_decompose(const MuellerMatrix& m, double tol) {
  // Write M = M_rot * M_diatten(q, r, n) * depolarizer(0, m').  The first
  // column gives T = (q+r)/2 and |c| = (q-r)/2 with c = A D, where A is the
  // rotation block and D = (q-r)/2 n.  Removing the rank-one axis term from
  // the 3x3 block leaves sqrt(qr) * A * m', so a polar decomposition
  // separates A from the symmetric remainder.
  LuChipmanFactors f;
  const double t00 = m(0, 0);
  if (t00 <= tol) fail_physical("transformation annihilates all intensity");
  const Eigen::Vector3d col = m.block<3, 1>(1, 0);
  const Eigen::Vector3d row = m.block<1, 3>(0, 1).transpose();
  const Eigen::Matrix3d block = m.block<3, 3>(1, 1);

  const double len = col.norm();
  double q = t00 + len;
  double r = t00 - len;
  if (r < 0.0 && r > -tol) r = 0.0;
  if (q > 1.0 && q < 1.0 + 1e-6) q = 1.0;
  if (q < 0.0 || q > 1.0 + tol || r < 0.0) {
    fail_physical("diattenuation extraction out of range (q = " +
                  std::to_string(q) + ", r = " + std::to_string(r) + ")");
  }
  const double geo = std::sqrt(std::max(q * r, 0.0));

  Eigen::Matrix3d reduced = block;
  Eigen::Vector3d chat = Eigen::Vector3d::UnitZ();
  if (len > tol) {
    chat = col / len;
    reduced -= ((t00 - geo) / len) * chat * row.transpose();
  }

  // Polar split reduced = A * H with A in SO(3) and H symmetric PSD.
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      reduced, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU();
  Eigen::Matrix3d v = svd.matrixV();
  Eigen::Vector3d sv = svd.singularValues();
  Eigen::Matrix3d rot = u * v.transpose();
  if (rot.determinant() < 0.0) {
    // Keep a proper rotation; the sign lands on the smallest singular value.
    u.col(2) *= -1.0;
    sv[2] *= -1.0;
    rot = u * v.transpose();
    f.degenerate = true;
  }
  Eigen::Matrix3d h = v * sv.asDiagonal() * v.transpose();
  if (sv.cwiseAbs().minCoeff() < tol) f.degenerate = true;

  if (geo < tol) {
    // Polarizer limit q*r = 0: m' is not recoverable.
    f.degenerate = true;
    f.depolarizer_m = Eigen::Matrix3d::Identity();
  } else {
    f.depolarizer_m = h / geo;
  }

  f.rotation = mueller_rotation(rot);
  f.rotation_params = rotation_params_from_matrix(rot);
  f.diattenuation_params.q = q;
  f.diattenuation_params.r = std::min(r, 1.0);
  if (len > tol) {
    f.diattenuation_params.axis = rot.transpose() * chat;
    f.diattenuation_params.axis.normalize();
  } else {
    f.diattenuation_params.axis = Eigen::Vector3d::UnitZ();
  }
  f.diattenuation =
      mueller_diattenuation(f.diattenuation_params.q, f.diattenuation_params.r,
                            f.diattenuation_params.axis);
  return f;
}

StokesVector apply_mueller(const MuellerMatrix& m, const StokesVector& s) {
  return StokesVector::from_vector(m * s.as_vector());
}

CoherencyMatrix apply_jones(const JonesMatrix& j, const CoherencyMatrix& psi) {
  return j * psi * j.adjoint();
}

Eigen::Matrix4cd cloude_matrix(const MuellerMatrix& m) {
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const Eigen::Matrix2cd& a = pauli(mu);
      const Eigen::Matrix2cd b = pauli(nu).conjugate();
      // Kronecker product a (x) b.
      for (int i = 0; i < 2; ++i) {
        for (int jx = 0; jx < 2; ++jx) {
          for (int k = 0; k < 2; ++k) {
            for (int l = 0; l < 2; ++l) {
              c(2 * i + jx, 2 * k + l) += 0.25 * m(mu, nu) * a(i, k) * b(jx, l);
            }
          }
        }
      }
    }
  }
  return c;
}

MuellerValidityReport validate_mueller(const MuellerMatrix& m, double tol) {
  MuellerValidityReport rep;
  const double t00 = m(0, 0);
  rep.trace_bound_excess = (m * m.transpose()).trace() - 4.0 * t00 * t00;
  rep.transmittance = t00 + m.block<1, 3>(0, 1).norm();
  rep.reverse_transmittance = t00 + m.block<3, 1>(1, 0).norm();

  const Eigen::Matrix4cd c = cloude_matrix(m);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(c);
  Eigen::Vector4d ev = es.eigenvalues();
  for (int i = 0; i < 4; ++i) rep.cloude_eigenvalues[i] = ev[3 - i];

  Eigen::Matrix4d g = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
  const Eigen::Matrix4d q = m.transpose() * g * m;
  const double scale = q(0, 0);
  rep.lorentz_invariant_residual =
      (q - scale * g).norm() / std::max(1.0, std::abs(scale));

  const double mscale = std::max(1.0, t00 * t00);
  rep.deterministic = std::abs(rep.trace_bound_excess) <= tol * mscale;
  rep.cloude_positive = rep.cloude_eigenvalues[3] >= -tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  rep.transmittance_ok = rep.transmittance <= 1.0 + tol;
  rep.reverse_transmittance_ok = rep.reverse_transmittance <= 1.0 + tol;
  rep.transmittance_boundary =
      (rep.transmittance_ok && rep.transmittance > 1.0) ||
      (rep.reverse_transmittance_ok && rep.reverse_transmittance > 1.0);
  rep.physical = rep.cloude_positive && rep.transmittance_ok &&
                 rep.reverse_transmittance_ok;
  return rep;
}

TransformDecomposition decompose_jones(const JonesMatrix& j, double tol) {
  TransformDecomposition d;
  auto [t, j_sl] = scale_factor_decompose(j, tol);
  d.t = t;
  const PolarFactors pf = polar_decompose(j_sl, tol);
  d.rotation = rotation_params_from_jones(pf.rotation);
  d.boost = boost_params_from_jones(pf.boost_right);
  // q = t^2 e^eta, r = t^2 e^-eta along the boost axis.
  d.diattenuation.q = t * t * std::exp(d.boost.eta);
  d.diattenuation.r = t * t * std::exp(-d.boost.eta);
  d.diattenuation.axis = d.boost.axis;
  d.p_vec = Eigen::Vector3d::Zero();
  d.m_mat = Eigen::Matrix3d::Identity();
  return d;
}

}  // namespace polab
