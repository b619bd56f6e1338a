#include "core/channels.hpp"

#include <cmath>

namespace polab {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPruneNorm = 1e-14;

double sparse_norm(const SparseOp& k) {
  double sum = 0.0;
  for (int col = 0; col < k.outerSize(); ++col) {
    for (SparseOp::InnerIterator it(k, col); it; ++it) {
      sum += std::norm(it.value());
    }
  }
  return std::sqrt(sum);
}

}  // namespace

Channel Channel::kraus(const FockBasis& basis, std::vector<SparseOp> ops,
                       std::string label) {
  const int d = basis.dim();
  for (const auto& k : ops) {
    if (k.rows() != d || k.cols() != d) {
      fail_argument("Kraus operator dimension mismatch");
    }
  }
  Channel c(basis, Kind::kraus_list);
  c.ops_ = std::move(ops);
  c.label_ = std::move(label);
  // Drop numerically empty operators, then insist on trace preservation.
  std::erase_if(c.ops_,
                [](const SparseOp& k) { return sparse_norm(k) < kPruneNorm; });
  SparseOp sum(d, d);
  for (const auto& k : c.ops_) sum = sum + SparseOp(SparseOp(k.adjoint()) * k);
  Eigen::MatrixXcd defect = Eigen::MatrixXcd(sum);
  defect -= Eigen::MatrixXcd::Identity(d, d);
  const double worst = defect.cwiseAbs().maxCoeff();
  if (worst > 1e-10) {
    fail_physical("Kraus set is not trace preserving (defect " +
                  format_scalar(worst) + ")");
  }
  return c;
}

Channel Channel::kraus(const FockBasis& basis,
                       const std::vector<Eigen::MatrixXcd>& ops,
                       std::string label) {
  std::vector<SparseOp> sparse;
  sparse.reserve(ops.size());
  // Exact conversion: only literal zeros are left unstored.
  for (const auto& k : ops) sparse.emplace_back(k.sparseView(0.0, 0.0));
  return kraus(basis, std::move(sparse), std::move(label));
}

Channel Channel::layer_twirl(const FockBasis& basis) {
  Channel c(basis, Kind::layer_twirl);
  c.label_ = "complete-depolarizer";
  return c;
}

std::vector<Eigen::MatrixXcd> Channel::kraus_ops() const {
  std::vector<Eigen::MatrixXcd> dense;
  dense.reserve(ops_.size());
  for (const auto& k : ops_) dense.emplace_back(Eigen::MatrixXcd(k));
  return dense;
}

FockState Channel::apply(const FockState& state) const {
  if (!(state.basis() == basis_)) fail_argument("channel/state basis mismatch");
  const Eigen::MatrixXcd rho = state.density_matrix();
  const int d = basis_.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  if (kind_ == Kind::layer_twirl) {
    for (int total = 0; total <= basis_.n_max(); ++total) {
      const int off = FockBasis::layer_offset(total);
      const int ld = FockBasis::layer_dim(total);
      const cplx weight = rho.block(off, off, ld, ld).trace();
      for (int k = 0; k < ld; ++k) {
        out(off + k, off + k) = weight / static_cast<double>(ld);
      }
    }
  } else {
    for (const auto& k : ops_) {
      const Eigen::MatrixXcd left = k * rho;
      out.noalias() += left * k.adjoint();
    }
  }
  return FockState::density(basis_, std::move(out), state.leakage());
}

Eigen::MatrixXcd Channel::heisenberg(const Eigen::MatrixXcd& op) const {
  if (op.rows() != basis_.dim() || op.cols() != basis_.dim()) {
    fail_argument("operator dimension mismatch");
  }
  const int d = basis_.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  if (kind_ == Kind::layer_twirl) {
    for (int total = 0; total <= basis_.n_max(); ++total) {
      const int off = FockBasis::layer_offset(total);
      const int ld = FockBasis::layer_dim(total);
      const cplx mean =
          op.block(off, off, ld, ld).trace() / static_cast<double>(ld);
      for (int k = 0; k < ld; ++k) out(off + k, off + k) = mean;
    }
  } else {
    for (const auto& k : ops_) {
      const Eigen::MatrixXcd left = SparseOp(k.adjoint()) * op;
      out.noalias() += left * k;
    }
  }
  return out;
}

double Channel::completeness_defect() const {
  if (kind_ == Kind::layer_twirl) return 0.0;
  const int d = basis_.dim();
  SparseOp sum(d, d);
  for (const auto& k : ops_) sum = sum + SparseOp(SparseOp(k.adjoint()) * k);
  Eigen::MatrixXcd defect = Eigen::MatrixXcd(sum);
  defect -= Eigen::MatrixXcd::Identity(d, d);
  return defect.cwiseAbs().maxCoeff();
}

Channel attenuation_channel(const FockBasis& basis, double q, Mode mode) {
  if (q < 0.0 || q > 1.0) fail_argument("attenuation needs q in [0, 1]");
  const int d = basis.dim();
  std::vector<SparseOp> ops;
  for (int losses = 0; losses <= basis.n_max(); ++losses) {
    std::vector<Eigen::Triplet<cplx>> entries;
    for (int idx = 0; idx < d; ++idx) {
      const auto [m, n] = basis.modes(idx);
      const int occupancy = (mode == Mode::a) ? m : n;
      if (occupancy < losses) continue;
      const int kept = occupancy - losses;
      const double amp = std::sqrt(binomial(kept + losses, losses) *
                                   std::pow(q, kept) *
                                   std::pow(1.0 - q, losses));
      const int target = (mode == Mode::a) ? basis.index(kept, n)
                                           : basis.index(m, kept);
      if (amp != 0.0) entries.emplace_back(target, idx, amp);
    }
    SparseOp k(d, d);
    k.setFromTriplets(entries.begin(), entries.end());
    ops.push_back(std::move(k));
  }
  return Channel::kraus(basis, std::move(ops),
                        "attenuation(q=" + std::to_string(q) + ")");
}

Channel diattenuation_channel(const FockBasis& basis, double q, double r,
                              const Eigen::Vector3d& n) {
  if (q < 0.0 || q > 1.0 || r < 0.0 || r > 1.0) {
    fail_argument("diattenuation needs q, r in [0, 1]");
  }
  const Eigen::Matrix3d to_z = rotation3_taking(n, Eigen::Vector3d::UnitZ());
  const RotationFactor fwd = rotation_params_from_matrix(to_z);
  const bool aligned = std::abs(fwd.theta) < 1e-14;

  const Channel loss_a = attenuation_channel(basis, q, Mode::a);
  const Channel loss_b = attenuation_channel(basis, r, Mode::b);
  std::vector<SparseOp> ops;
  if (aligned) {
    for (const auto& ka : loss_a.sparse_ops()) {
      for (const auto& kb : loss_b.sparse_ops()) {
        SparseOp k = SparseOp(ka * kb);
        if (sparse_norm(k) < kPruneNorm) continue;
        ops.push_back(std::move(k));
      }
    }
  } else {
    // Rotation operators are layer-block diagonal, so the sandwiched
    // products stay sparse.
    const SparseOp r_to =
        rotation_operator(basis, fwd.theta, fwd.axis).sparseView(0.0, 0.0);
    const SparseOp r_back = SparseOp(r_to.adjoint());
    for (const auto& ka : loss_a.sparse_ops()) {
      for (const auto& kb : loss_b.sparse_ops()) {
        SparseOp k = SparseOp(r_back * SparseOp(ka * kb) * r_to);
        if (sparse_norm(k) < kPruneNorm) continue;
        ops.push_back(std::move(k));
      }
    }
  }
  return Channel::kraus(basis, std::move(ops),
                        "diattenuation(q=" + std::to_string(q) +
                            ",r=" + std::to_string(r) + ")");
}

Channel rotation_channel(const FockBasis& basis, double theta,
                         const Eigen::Vector3d& n) {
  std::vector<SparseOp> ops;
  ops.emplace_back(rotation_operator(basis, theta, n).sparseView(0.0, 0.0));
  return Channel::kraus(basis, std::move(ops), "rotation");
}

Channel rotation_mixture_channel(const FockBasis& basis,
                                 const std::vector<WeightedRotation>& parts) {
  if (parts.empty()) fail_argument("rotation mixture needs at least one part");
  double total = 0.0;
  for (const auto& p : parts) {
    if (p.weight <= 0.0) fail_argument("mixture weights must be positive");
    total += p.weight;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    fail_argument("mixture weights must sum to 1");
  }
  std::vector<SparseOp> ops;
  for (const auto& p : parts) {
    const Eigen::MatrixXcd scaled =
        std::sqrt(p.weight) * rotation_operator(basis, p.theta, p.axis);
    ops.emplace_back(scaled.sparseView(0.0, 0.0));
  }
  return Channel::kraus(basis, std::move(ops), "rotation-mixture");
}

Channel complete_depolarizer(const FockBasis& basis) {
  return Channel::layer_twirl(basis);
}

Channel lossless_polarizer_channel(const FockBasis& basis, double theta,
                                   double phi) {
  const int d = basis.dim();
  std::vector<SparseOp> ops;
  ops.reserve(static_cast<std::size_t>(d));
  for (int idx = 0; idx < d; ++idx) {
    const auto [m, n] = basis.modes(idx);
    const FockState target = su2_coherent(basis, m + n, theta, phi);
    std::vector<Eigen::Triplet<cplx>> entries;
    for (int row = 0; row < d; ++row) {
      const cplx amp = target.amplitudes()[row];
      if (amp != cplx(0.0, 0.0)) entries.emplace_back(row, idx, amp);
    }
    SparseOp k(d, d);
    k.setFromTriplets(entries.begin(), entries.end());
    ops.push_back(std::move(k));
  }
  return Channel::kraus(basis, std::move(ops), "lossless-polarizer");
}

Channel fixed_output_channel(const FockState& target) {
  if (!target.is_pure()) fail_argument("fixed_output_channel needs a pure target");
  const FockBasis& basis = target.basis();
  const int d = basis.dim();
  const double norm = target.amplitudes().norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    fail_argument("fixed_output_channel target must be normalized");
  }
  std::vector<SparseOp> ops;
  ops.reserve(static_cast<std::size_t>(d));
  for (int idx = 0; idx < d; ++idx) {
    std::vector<Eigen::Triplet<cplx>> entries;
    for (int row = 0; row < d; ++row) {
      const cplx amp = target.amplitudes()[row];
      if (amp != cplx(0.0, 0.0)) entries.emplace_back(row, idx, amp);
    }
    SparseOp k(d, d);
    k.setFromTriplets(entries.begin(), entries.end());
    ops.push_back(std::move(k));
  }
  return Channel::kraus(target.basis(), std::move(ops), "fixed-output");
}

Channel kerr_unitary(const FockBasis& basis, double chi) {
  const int d = basis.dim();
  std::vector<Eigen::Triplet<cplx>> entries;
  for (int idx = 0; idx < d; ++idx) {
    const auto [m, n] = basis.modes(idx);
    const double s3 = 0.5 * (m - n);
    entries.emplace_back(idx, idx, std::exp(-kI * chi * s3 * s3));
  }
  SparseOp u(d, d);
  u.setFromTriplets(entries.begin(), entries.end());
  std::vector<SparseOp> ops;
  ops.push_back(std::move(u));
  return Channel::kraus(basis, std::move(ops),
                        "kerr(chi=" + std::to_string(chi) + ")");
}

InducedMuellerResult induced_mueller(const Channel& channel,
                                     const std::vector<FockState>& probes) {
  if (probes.size() < 4) fail_argument("need at least four probe states");
  const int count = static_cast<int>(probes.size());
  Eigen::MatrixXd in(4, count);
  Eigen::MatrixXd out(4, count);
  for (int i = 0; i < count; ++i) {
    in.col(i) = stokes_vector(probes[static_cast<std::size_t>(i)]).as_vector();
    out.col(i) =
        stokes_vector(channel.apply(probes[static_cast<std::size_t>(i)]))
            .as_vector();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      in.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cutoff = 1e-12 * svd.singularValues().maxCoeff();
  if (svd.singularValues().minCoeff() <= cutoff) {
    fail_argument("rank-deficient probe set: Stokes inputs do not span R^4");
  }
  InducedMuellerResult result;
  // Rows of M solve in^T m_row = out_row^T in least squares.
  Eigen::MatrixXd mt = svd.solve(out.transpose());
  result.mueller = mt.transpose();
  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    sum += (out.col(i) - result.mueller * in.col(i)).squaredNorm();
  }
  result.residual = std::sqrt(sum / count);
  result.probe_count = count;
  return result;
}

MuellerMatrix single_photon_mueller(const Channel& channel) {
  return induced_mueller(channel, single_photon_probes(channel.basis()))
      .mueller;
}

std::vector<FockState> single_photon_probes(const FockBasis& basis) {
  if (basis.n_max() < 1) fail_argument("basis has no single-photon layer");
  std::vector<FockState> probes;
  probes.push_back(basis_state(basis, 1, 0));                      // R
  probes.push_back(basis_state(basis, 0, 1));                      // L
  probes.push_back(su2_coherent(basis, 1, M_PI / 2, 0.0));         // H
  probes.push_back(su2_coherent(basis, 1, M_PI / 2, M_PI / 2.0));  // D
  return probes;
}

std::vector<FockState> layer_probes(const FockBasis& basis, int n_photons,
                                    int directions) {
  std::vector<FockState> probes;
  for (const auto& dir : direction_grid(std::max(directions, 4))) {
    const double theta = std::acos(std::clamp(dir[2], -1.0, 1.0));
    const double phi = std::atan2(dir[1], dir[0]);
    probes.push_back(su2_coherent(basis, n_photons, theta, phi));
  }
  return probes;
}

std::vector<FockState> coherent_probes(const FockBasis& basis,
                                       const std::vector<double>& alphas,
                                       int directions,
                                       double leakage_threshold) {
  std::vector<FockState> probes;
  for (double alpha : alphas) {
    for (const auto& dir : direction_grid(std::max(directions, 4))) {
      const double theta = std::acos(std::clamp(dir[2], -1.0, 1.0));
      const double phi = std::atan2(dir[1], dir[0]);
      probes.push_back(
          coherent_polarized(basis, alpha, theta, phi, leakage_threshold));
    }
  }
  return probes;
}

}  // namespace polab
