#include "core/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "core/json_io.hpp"

namespace polab {

GadgetConfig GadgetConfig::for_component(StokesComponent c,
                                         std::uint64_t shots,
                                         std::uint64_t seed) {
  GadgetConfig cfg;
  cfg.named = true;
  cfg.component = c;
  auto [theta, axis] = gadget_rotation_for(c);
  cfg.theta = theta;
  cfg.axis = axis;
  cfg.shots = shots;
  cfg.seed = seed;
  return cfg;
}

std::pair<double, Eigen::Vector3d> gadget_rotation_for(StokesComponent c) {
  switch (c) {
    case StokesComponent::s1:
      // R(-pi/2, e2) maps e1 to e3.
      return {-M_PI / 2.0, Eigen::Vector3d::UnitY()};
    case StokesComponent::s2:
      // R(pi/2, e1) maps e2 to e3.
      return {M_PI / 2.0, Eigen::Vector3d::UnitX()};
    case StokesComponent::s3:
      return {0.0, Eigen::Vector3d::UnitZ()};
  }
  fail_argument("unknown Stokes component");
}

JonesMatrix waveplate_jones(double delta, double phi) {
  return jones_rotation(
      delta, Eigen::Vector3d(std::cos(2.0 * phi), std::sin(2.0 * phi), 0.0));
}

RetarderAngles gadget_retarder_angles(StokesComponent c) {
  // Plate triples whose composed rotation equals gadget_rotation_for(c);
  // the middle half-wave plate at phi + pi/4 undoes a quarter-wave pair, so
  // the S3 triple is the identity.  Angles are fast-axis lab angles in
  // light order.
  switch (c) {
    case StokesComponent::s1:
      return {0.0, 5.0 * M_PI / 8.0, 0.0};
    case StokesComponent::s2:
      return {M_PI / 4.0, 7.0 * M_PI / 8.0, M_PI / 4.0};
    case StokesComponent::s3:
      return {0.0, M_PI / 2.0, 0.0};
  }
  fail_argument("unknown Stokes component");
}

CountRecord simulate_gadget(const FockState& state,
                            const GadgetConfig& config) {
  if (config.shots < 1) fail_argument("shots must be >= 1");
  double theta = config.theta;
  Eigen::Vector3d axis = config.axis;
  if (config.named) std::tie(theta, axis) = gadget_rotation_for(config.component);

  const FockState rotated =
      theta == 0.0 ? state : rotate(state, theta, axis);
  const Eigen::MatrixXcd rho = rotated.density_matrix();
  const int d = state.basis().dim();

  // Exact joint count distribution over the truncated outcome list.
  std::vector<double> cumulative(static_cast<std::size_t>(d));
  double mass = 0.0;
  for (int idx = 0; idx < d; ++idx) {
    mass += std::max(0.0, rho(idx, idx).real());
    cumulative[static_cast<std::size_t>(idx)] = mass;
  }
  CountRecord record;
  record.distribution_deficit = std::abs(1.0 - mass);
  if (record.distribution_deficit > config.mass_tolerance) {
    fail_physical("count distribution mass deficit " +
                  format_scalar(record.distribution_deficit) +
                  " exceeds tolerance; raise n_max");
  }

  record.shots = config.shots;
  record.counts.reserve(config.shots);
  SplitMix64 rng(config.seed);
  double sum_diff = 0.0, sum_diff2 = 0.0, sum_tot = 0.0, sum_tot2 = 0.0;
  for (std::uint64_t shot = 0; shot < config.shots; ++shot) {
    const double u = rng.uniform01() * mass;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const int idx = std::min<int>(
        static_cast<int>(it - cumulative.begin()), d - 1);
    const auto [n1, n2] = state.basis().modes(idx);
    record.counts.emplace_back(n1, n2);
    const double diff = 0.5 * (n1 - n2);
    const double tot = 0.5 * (n1 + n2);
    sum_diff += diff;
    sum_diff2 += diff * diff;
    sum_tot += tot;
    sum_tot2 += tot * tot;
  }
  const double inv = 1.0 / static_cast<double>(config.shots);
  record.mean_difference_half = sum_diff * inv;
  record.var_difference_half =
      std::max(0.0, sum_diff2 * inv -
                        record.mean_difference_half * record.mean_difference_half);
  record.mean_total_half = sum_tot * inv;
  record.var_total_half =
      std::max(0.0, sum_tot2 * inv - record.mean_total_half * record.mean_total_half);
  return record;
}

StokesEstimate estimate_stokes(const FockState& state, std::uint64_t shots,
                               std::uint64_t seed) {
  if (shots < 2) fail_argument("estimate_stokes needs shots >= 2");
  StokesEstimate est;
  est.shots = shots;
  est.seed = seed;
  const std::array<StokesComponent, 3> components = {
      StokesComponent::s1, StokesComponent::s2, StokesComponent::s3};
  for (std::size_t i = 0; i < components.size(); ++i) {
    GadgetConfig cfg = GadgetConfig::for_component(components[i], shots,
                                                   SplitMix64::stream(seed, i + 1).state);
    const CountRecord rec = simulate_gadget(state, cfg);
    const double se =
        std::sqrt(rec.var_difference_half / static_cast<double>(shots));
    switch (components[i]) {
      case StokesComponent::s1:
        est.value.s1 = rec.mean_difference_half;
        est.standard_error[1] = se;
        break;
      case StokesComponent::s2:
        est.value.s2 = rec.mean_difference_half;
        est.standard_error[2] = se;
        break;
      case StokesComponent::s3:
        est.value.s3 = rec.mean_difference_half;
        est.standard_error[3] = se;
        // Total intensity comes along for free in every setting.
        est.value.s0 = rec.mean_total_half;
        est.standard_error[0] =
            std::sqrt(rec.var_total_half / static_cast<double>(shots));
        break;
    }
  }
  return est;
}

bool ExperimentReport::all_passed() const {
  return std::all_of(flags.begin(), flags.end(),
                     [](const Flag& f) { return f.passed; });
}

namespace {

Flag make_flag(const std::string& name, double value, double threshold,
               const std::string& comparison) {
  Flag f;
  f.name = name;
  f.value = value;
  f.threshold = threshold;
  f.comparison = comparison;
  f.passed = comparison == "<" ? value < threshold : value > threshold;
  return f;
}

// Random density matrix supported on a single layer.
FockState random_layer_density(const FockBasis& basis, int layer,
                               SplitMix64& rng) {
  const int ld = FockBasis::layer_dim(layer);
  Eigen::MatrixXcd g(ld, ld);
  for (int i = 0; i < ld; ++i) {
    for (int j = 0; j < ld; ++j) {
      g(i, j) = cplx(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
    }
  }
  Eigen::MatrixXcd block = g * g.adjoint();
  block /= block.trace().real();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  rho.block(FockBasis::layer_offset(layer), FockBasis::layer_offset(layer), ld,
            ld) = block;
  return FockState::density(basis, std::move(rho));
}

double isotropy_deviation(const FockState& state) {
  const FockState twirled = complete_depolarizer(state.basis()).apply(state);
  return (state.density_matrix() - twirled.density_matrix()).norm();
}

ExperimentReport experiment_subset_trace(const json& params) {
  const int layer = params.value("n", 6);
  const int samples = params.value("samples", 50);
  const std::uint64_t seed = params.value("seed", 20210907ULL);
  const FockBasis basis(layer);
  SplitMix64 rng(seed);

  ExperimentReport report;
  report.name = "subset-trace";

  Table table;
  table.columns = {"sample", "subset_size", "ratio_deviation"};
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const FockState rho = random_layer_density(basis, layer, rng);
    const StokesVector full = stokes_vector(rho);
    FockState current = rho;
    for (int m = layer - 1; m >= 1; --m) {
      current = partial_trace_one_photon(current);
      const StokesVector reduced = stokes_vector(current);
      // Stokes parameters per photon are subset independent.
      double dev = 0.0;
      const double a[4] = {reduced.s0, reduced.s1, reduced.s2, reduced.s3};
      const double b[4] = {full.s0, full.s1, full.s2, full.s3};
      for (int k = 0; k < 4; ++k) {
        dev = std::max(dev, std::abs(a[k] / m - b[k] / layer));
      }
      worst = std::max(worst, dev);
      if (s < 3) {
        table.rows.push_back({static_cast<double>(s), static_cast<double>(m),
                              dev});
      }
    }
  }
  report.tables["ratio_invariance"] = table;
  report.flags.push_back(
      make_flag("per-photon-stokes-invariant", worst, 1e-10, "<"));

  // Coherent and isotropic single-layer closures are exact.
  const FockState coh = su2_coherent(basis, layer, 1.1, 0.4);
  const FockState coh_reduced = partial_trace_one_photon(coh);
  const FockState coh_expected = su2_coherent(basis, layer - 1, 1.1, 0.4);
  const double coh_dev =
      (coh_reduced.density_matrix() - coh_expected.density_matrix()).norm();
  report.flags.push_back(make_flag("coherent-closure", coh_dev, 1e-12, "<"));

  std::vector<double> beta(static_cast<std::size_t>(layer) + 1, 0.0);
  beta[static_cast<std::size_t>(layer)] = 1.0;
  const FockState iso = isotropic_state(basis, beta);
  std::vector<double> beta_down(static_cast<std::size_t>(layer), 0.0);
  beta_down[static_cast<std::size_t>(layer - 1)] = 1.0;
  const FockState iso_expected = isotropic_state(basis, beta_down);
  const double iso_dev = (partial_trace_one_photon(iso).density_matrix() -
                          iso_expected.density_matrix())
                             .norm();
  report.flags.push_back(make_flag("isotropic-closure", iso_dev, 1e-12, "<"));

  // Indefinite photon number: dropping one photon rescales each layer's
  // Stokes contribution by (N-1)/N.
  Eigen::MatrixXcd mixed =
      Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  std::vector<double> weights = {0.5, 0.3, 0.2};
  std::vector<int> layers = {2, 3, layer};
  std::vector<double> directions = {0.3, 1.2, 2.2};
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const FockState part =
        su2_coherent(basis, layers[i], directions[i], 0.7 * i);
    mixed += weights[i] * part.density_matrix();
  }
  const FockState mixture = FockState::density(basis, std::move(mixed));
  const StokesVector traced = stokes_vector(trace_one_photon_mixed(mixture));
  StokesVector predicted{0, 0, 0, 0};
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const FockState part =
        su2_coherent(basis, layers[i], directions[i], 0.7 * i);
    const StokesVector s = stokes_vector(part);
    const double scale =
        weights[i] * static_cast<double>(layers[i] - 1) / layers[i];
    predicted.s0 += scale * s.s0;
    predicted.s1 += scale * s.s1;
    predicted.s2 += scale * s.s2;
    predicted.s3 += scale * s.s3;
  }
  const double mixed_dev =
      (traced.as_vector() - predicted.as_vector()).cwiseAbs().maxCoeff();
  report.flags.push_back(
      make_flag("mixed-intensity-factor", mixed_dev, 1e-10, "<"));

  Table mixed_table;
  mixed_table.columns = {"layer", "weight", "s3_layer", "s3_scaled"};
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const FockState part =
        su2_coherent(basis, layers[i], directions[i], 0.7 * i);
    const StokesVector s = stokes_vector(part);
    mixed_table.rows.push_back(
        {static_cast<double>(layers[i]), weights[i], s.s3,
         s.s3 * (layers[i] - 1.0) / layers[i]});
  }
  report.tables["mixed_layers"] = mixed_table;
  return report;
}

ExperimentReport experiment_anisotropy(const json& params) {
  const double alpha = params.value("alpha", 2.0);
  const int layer = params.value("n", 3);
  const int n_max = params.value("n_max", 24);
  ExperimentReport report;
  report.name = "anisotropy";

  // Mixture of two antipodal fixed-N coherent states.
  {
    const FockBasis basis(layer);
    const Eigen::MatrixXcd rho =
        0.5 * su2_coherent(basis, layer, 0.0, 0.0).density_matrix() +
        0.5 * su2_coherent(basis, layer, M_PI, 0.0).density_matrix();
    const FockState mix = FockState::density(basis, rho);
    const StokesMoments mo = moments(mix);
    Table table;
    table.columns = {"variance", "computed", "expected"};
    table.rows.push_back({1.0, mo.covariance(0, 0), layer / 4.0});
    table.rows.push_back({2.0, mo.covariance(1, 1), layer / 4.0});
    table.rows.push_back({3.0, mo.covariance(2, 2), layer * layer / 4.0});
    report.tables["fixed_n_mixture"] = table;
    report.flags.push_back(make_flag("fixed-n-mean-vanishes", mo.mean.norm(),
                                     1e-12, "<"));
    double dev = std::abs(mo.covariance(0, 0) - layer / 4.0);
    dev = std::max(dev, std::abs(mo.covariance(1, 1) - layer / 4.0));
    dev = std::max(dev,
                   std::abs(mo.covariance(2, 2) - layer * layer / 4.0));
    report.flags.push_back(
        make_flag("fixed-n-variance-pattern", dev, 1e-9, "<"));
  }

  // Mixture of two antipodal coherent states: still classically
  // unpolarized, still anisotropic.
  {
    const FockBasis basis(n_max);
    const Eigen::MatrixXcd rho =
        0.5 * coherent_polarized(basis, alpha, 0.0, 0.0, 1e-9)
                  .density_matrix() +
        0.5 * coherent_polarized(basis, alpha, M_PI, 0.0, 1e-9)
                  .density_matrix();
    const FockState mix = FockState::density(basis, rho);
    const StokesMoments mo = moments(mix);
    const double a2 = alpha * alpha;
    Table table;
    table.columns = {"variance", "computed", "expected"};
    table.rows.push_back({1.0, mo.covariance(0, 0), a2 / 4.0});
    table.rows.push_back({2.0, mo.covariance(1, 1), a2 / 4.0});
    table.rows.push_back({3.0, mo.covariance(2, 2), a2 * (1.0 + a2) / 4.0});
    report.tables["coherent_mixture"] = table;
    double dev = std::abs(mo.covariance(0, 0) - a2 / 4.0);
    dev = std::max(dev, std::abs(mo.covariance(1, 1) - a2 / 4.0));
    dev = std::max(dev,
                   std::abs(mo.covariance(2, 2) - a2 * (1.0 + a2) / 4.0));
    report.flags.push_back(
        make_flag("coherent-variance-pattern", dev, 1e-7, "<"));

    // Rotating the classically unpolarized mixture moves variance between
    // components: a measurable change classical optics says cannot happen.
    const FockState rotated = rotate(mix, M_PI / 2.0, Eigen::Vector3d::UnitX());
    const StokesMoments mo_rot = moments(rotated);
    report.flags.push_back(make_flag(
        "rotation-changes-variance",
        std::abs(mo_rot.covariance(2, 2) - mo.covariance(2, 2)), 1e-3, ">"));
    report.flags.push_back(make_flag("rotation-keeps-mean-unpolarized",
                                     mo_rot.mean.norm(), 1e-9, "<"));
  }
  return report;
}

ExperimentReport experiment_decompositions(const json& params) {
  const int layer = params.value("n", 4);
  const double p = params.value("p", 0.6);
  const double q = params.value("q", 0.7);
  const double r = params.value("r", 0.4);
  const FockBasis basis(layer);
  ExperimentReport report;
  report.name = "decompositions";

  const Channel diatten =
      diattenuation_channel(basis, q, r, Eigen::Vector3d::UnitZ());
  const Channel partial_loss =
      attenuation_channel(basis, r, Mode::b);
  // Two-rotation depolarizer: do nothing or flip about an axis orthogonal
  // to the polarization direction.
  const Channel two_rotation = rotation_mixture_channel(
      basis, {{0.5, 0.0, Eigen::Vector3d::UnitZ()},
              {0.5, M_PI, Eigen::Vector3d::UnitX()}});

  // Superposition split: polarized along e3 plus an S-orthogonal
  // unpolarized layer state.
  {
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
    amp[basis.index(layer, 0)] = std::sqrt(p);
    amp[basis.index(layer / 2, layer - layer / 2)] = std::sqrt(1.0 - p);
    const FockState psi = FockState::pure(basis, std::move(amp));
    const double purity_before = psi.purity();
    const double purity_after = diatten.apply(psi).purity();
    report.flags.push_back(
        make_flag("superposition-split-initially-pure",
                  std::abs(purity_before - 1.0), 1e-12, "<"));
    report.flags.push_back(make_flag("superposition-split-purity-broken",
                                     1.0 - purity_after, 1e-3, ">"));
    Table table;
    table.columns = {"purity_before", "purity_after"};
    table.rows.push_back({purity_before, purity_after});
    report.tables["superposition_split"] = table;
  }

  // Mixture split: polarized fraction stays perfectly polarized under the
  // loss channels, and the depolarized output is a valid unpolarized
  // component.
  {
    const FockState pol = su2_coherent(basis, layer, M_PI / 3.0, 0.4);
    const FockState pol_after = diatten.apply(pol);
    report.flags.push_back(make_flag("mixture-split-polarized-stays-polarized",
                                     std::abs(dop(pol_after) - 1.0), 1e-9,
                                     "<"));
    const FockState depolarized = two_rotation.apply(
        su2_coherent(basis, layer, 0.0, 0.0));
    report.flags.push_back(make_flag("mixture-split-depolarized-unpolarized",
                                     moments(depolarized).mean.norm(), 1e-10,
                                     "<"));
    Table table;
    table.columns = {"dop_before", "dop_after_diattenuation",
                     "depolarized_mean_norm"};
    table.rows.push_back({dop(pol), dop(pol_after),
                          moments(depolarized).mean.norm()});
    report.tables["mixture_split"] = table;
  }

  // Isotropic split: the isotropic component does not stay isotropic under
  // partial attenuation, nor is the two-rotation depolarizer output
  // isotropic.
  {
    std::vector<double> beta(static_cast<std::size_t>(layer) + 1, 0.0);
    beta[static_cast<std::size_t>(layer)] = 1.0;
    const FockState iso = isotropic_state(basis, beta);
    const double before = isotropy_deviation(iso);
    const double after = isotropy_deviation(partial_loss.apply(iso));
    report.flags.push_back(
        make_flag("isotropic-split-initially-isotropic", before, 1e-12, "<"));
    report.flags.push_back(
        make_flag("isotropic-split-broken-by-attenuation", after, 1e-3, ">"));
    const FockState depolarized = two_rotation.apply(
        su2_coherent(basis, layer, 0.0, 0.0));
    report.flags.push_back(make_flag("isotropic-split-depolarizer-output",
                                     isotropy_deviation(depolarized), 1e-3,
                                     ">"));
    Table table;
    table.columns = {"isotropy_dev_before", "after_attenuation",
                     "after_two_rotation_depolarizer"};
    table.rows.push_back(
        {before, after, isotropy_deviation(depolarized)});
    report.tables["isotropic_split"] = table;
  }

  // Rotations leave every split intact.
  {
    const FockState pol = su2_coherent(basis, layer, M_PI / 3.0, 0.4);
    const FockState rotated = rotate(pol, 1.1, Eigen::Vector3d::UnitY());
    std::vector<double> beta(static_cast<std::size_t>(layer) + 1, 0.0);
    beta[static_cast<std::size_t>(layer)] = 1.0;
    const FockState iso = isotropic_state(basis, beta);
    double dev = std::abs(dop(rotated) - dop(pol));
    dev = std::max(dev, std::abs(rotated.purity() - pol.purity()));
    dev = std::max(dev,
                   isotropy_deviation(rotate(iso, 1.1, Eigen::Vector3d::UnitY())));
    report.flags.push_back(make_flag("rotations-preserve-all-splits", dev,
                                     1e-10, "<"));
  }
  return report;
}

ExperimentReport experiment_higher_order(const json& params) {
  const double q = params.value("q", 0.9);
  const double r = params.value("r", 0.5);
  const int n_max = params.value("n_max", 5);
  const FockBasis basis(n_max);
  ExperimentReport report;
  report.name = "higher-order";

  auto ops = stokes_operators(basis);
  const Channel channel =
      diattenuation_channel(basis, q, r, Eigen::Vector3d::UnitZ());

  // First moments stay Mueller-linear.
  const Eigen::MatrixXcd s3_image = channel.heisenberg(ops->s3);
  const Eigen::MatrixXcd s3_linear =
      0.5 * (q - r) * ops->s0 + 0.5 * (q + r) * ops->s3;
  const double linear_dev = (s3_image - s3_linear).cwiseAbs().maxCoeff();
  report.flags.push_back(
      make_flag("first-moment-linear", linear_dev, 1e-10, "<"));

  // The squared Stokes operator picks up corrections linear in the Stokes
  // operators from the commutators of the vacuum modes.
  const Eigen::MatrixXcd s3sq_image = channel.heisenberg(ops->s3 * ops->s3);
  const Eigen::MatrixXcd classical_square = s3_linear * s3_linear;
  const Eigen::MatrixXcd corrected =
      classical_square +
      0.25 * q * (1.0 - q) * (ops->s0 + ops->s3) +
      0.25 * r * (1.0 - r) * (ops->s0 - ops->s3);
  const double corrected_dev = (s3sq_image - corrected).cwiseAbs().maxCoeff();
  const double classical_dev =
      (s3sq_image - classical_square).cwiseAbs().maxCoeff();
  report.flags.push_back(
      make_flag("squared-moment-corrected", corrected_dev, 1e-10, "<"));
  if (q != 1.0 || r != 1.0) {
    report.flags.push_back(make_flag("squared-moment-not-classical",
                                     classical_dev, 1e-6, ">"));
  } else {
    report.flags.push_back(make_flag("squared-moment-corrections-vanish",
                                     classical_dev, 1e-12, "<"));
  }

  Table table;
  table.columns = {"q", "r", "max_linear_dev", "max_corrected_dev",
                   "max_classical_dev"};
  table.rows.push_back({q, r, linear_dev, corrected_dev, classical_dev});
  report.tables["operator_checks"] = table;
  return report;
}

ExperimentReport experiment_attenuated_isotropic(const json& params) {
  const int layer = params.value("n", 4);
  const double r = params.value("r", 0.6);
  const FockBasis basis(layer);
  ExperimentReport report;
  report.name = "attenuated-isotropic";

  std::vector<double> beta(static_cast<std::size_t>(layer) + 1, 0.0);
  beta[static_cast<std::size_t>(layer)] = 1.0;
  const FockState iso = isotropic_state(basis, beta);
  const FockState out = attenuation_channel(basis, r, Mode::b).apply(iso);
  const Eigen::MatrixXcd rho = out.density_matrix();

  Table table;
  table.columns = {"m", "total", "computed", "expected"};
  double worst = 0.0;
  for (int m = 0; m <= layer; ++m) {
    for (int total = m; total <= layer; ++total) {
      const double expected = binomial(layer - m, total - m) *
                              std::pow(r, total - m) *
                              std::pow(1.0 - r, layer - total) /
                              (layer + 1.0);
      const int idx = basis.index(m, total - m);
      const double computed = rho(idx, idx).real();
      worst = std::max(worst, std::abs(computed - expected));
      table.rows.push_back({static_cast<double>(m),
                            static_cast<double>(total), computed, expected});
    }
  }
  report.tables["coefficients"] = table;
  report.flags.push_back(make_flag("coefficient-table", worst, 1e-12, "<"));
  report.flags.push_back(make_flag("output-not-isotropic",
                                   isotropy_deviation(out), 1e-3, ">"));
  return report;
}

}  // namespace

ExperimentReport run_experiment(const std::string& name, const json& params) {
  const json effective = params.is_null() ? json::object() : params;
  if (!effective.is_object()) fail_schema("experiment params must be an object");
  ExperimentReport report;
  if (name == "subset-trace") {
    report = experiment_subset_trace(effective);
  } else if (name == "anisotropy") {
    report = experiment_anisotropy(effective);
  } else if (name == "decompositions") {
    report = experiment_decompositions(effective);
  } else if (name == "higher-order") {
    report = experiment_higher_order(effective);
  } else if (name == "attenuated-isotropic") {
    report = experiment_attenuated_isotropic(effective);
  } else {
    fail_argument("unknown experiment \"" + name + "\"");
  }
  report.inputs_echo = canonical_dump(effective);
  return report;
}

std::vector<std::string> experiment_names() {
  return {"subset-trace", "anisotropy", "decompositions", "higher-order",
          "attenuated-isotropic"};
}

}  // namespace polab
