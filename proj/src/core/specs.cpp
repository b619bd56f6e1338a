#include "core/specs.hpp"

#include <cmath>
#include <map>
#include <optional>

#include "core/estimation.hpp"
#include "core/majorana.hpp"

namespace polab {

namespace {

struct Spec {
  std::string name;
  std::map<std::string, std::string> params;

  double number(const std::string& key, std::optional<double> fallback = {}) const {
    auto it = params.find(key);
    if (it == params.end()) {
      if (fallback) return *fallback;
      fail_schema("spec \"" + name + "\" is missing parameter \"" + key + "\"");
    }
    try {
      std::size_t used = 0;
      const double value = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(it->second);
      return value;
    } catch (const std::exception&) {
      fail_schema("spec parameter \"" + key + "\" is not a number: " +
                  it->second);
    }
  }

  int integer(const std::string& key, std::optional<int> fallback = {}) const {
    if (fallback && params.find(key) == params.end()) return *fallback;
    const double v = number(key);
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-12) {
      fail_schema("spec parameter \"" + key + "\" must be an integer");
    }
    return i;
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }

  bool has(const std::string& key) const { return params.count(key) > 0; }
};

Spec parse_spec(const std::string& raw) {
  Spec spec;
  const auto colon = raw.find(':');
  spec.name = raw.substr(0, colon);
  if (spec.name.empty()) fail_schema("empty spec string");
  if (colon == std::string::npos) return spec;
  std::string rest = raw.substr(colon + 1);
  std::size_t start = 0;
  while (start < rest.size()) {
    auto comma = rest.find(',', start);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(start, comma - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail_schema("malformed spec parameter \"" + item + "\" (want key=value)");
    }
    spec.params[item.substr(0, eq)] = item.substr(eq + 1);
    start = comma + 1;
  }
  return spec;
}

Eigen::Vector3d axis_from_spec(const Spec& spec,
                               const Eigen::Vector3d& fallback) {
  if (!spec.has("nx") && !spec.has("ny") && !spec.has("nz")) return fallback;
  Eigen::Vector3d n(spec.number("nx", 0.0), spec.number("ny", 0.0),
                    spec.number("nz", 0.0));
  const double len = n.norm();
  if (len < 1e-12) fail_schema("spec axis must be nonzero");
  return n / len;
}

}  // namespace

FockState make_state_from_spec(const std::string& raw, int n_max,
                               double leakage_threshold) {
  const Spec spec = parse_spec(raw);
  const FockBasis basis(n_max);
  if (spec.name == "vacuum") return basis_state(basis, 0, 0);
  if (spec.name == "fock") {
    return basis_state(basis, spec.integer("m"), spec.integer("n"));
  }
  if (spec.name == "su2") {
    return su2_coherent(basis, spec.integer("n"), spec.number("theta", 0.0),
                        spec.number("phi", 0.0));
  }
  if (spec.name == "noon") return noon_state(basis, spec.integer("n"));
  if (spec.name == "tetrahedron") return tetrahedron_state(basis);
  if (spec.name == "coherent") {
    const cplx alpha(spec.number("alpha"), spec.number("alpha_im", 0.0));
    return coherent_polarized(basis, alpha, spec.number("theta", 0.0),
                              spec.number("phi", 0.0), leakage_threshold);
  }
  if (spec.name == "tmsv") {
    return tmsv_state(basis, spec.number("zeta"), spec.number("phase", 0.0),
                      leakage_threshold);
  }
  if (spec.name == "isotropic") {
    if (spec.has("layer")) {
      const int layer = spec.integer("layer");
      if (layer > n_max) fail_argument("isotropic layer exceeds n_max");
      std::vector<double> beta(static_cast<std::size_t>(layer) + 1, 0.0);
      beta.back() = 1.0;
      return isotropic_state(basis, beta);
    }
    return isotropic_poisson(basis, spec.number("mean"), leakage_threshold);
  }
  if (spec.name == "noon_inspired") {
    return noon_inspired(basis, spec.integer("m"), spec.integer("n"),
                         spec.number("theta", 0.0), spec.number("phi", 0.0));
  }
  fail_schema("unknown state spec \"" + spec.name + "\"");
}

Channel make_channel_from_spec(const std::string& raw, int n_max) {
  const Spec spec = parse_spec(raw);
  const FockBasis basis(n_max);
  if (spec.name == "attenuation") {
    const std::string mode = spec.text("mode", "a");
    if (mode != "a" && mode != "b") {
      fail_schema("attenuation mode must be \"a\" or \"b\"");
    }
    return attenuation_channel(basis, spec.number("q"),
                               mode == "a" ? Mode::a : Mode::b);
  }
  if (spec.name == "diattenuation") {
    return diattenuation_channel(basis, spec.number("q"), spec.number("r"),
                                 axis_from_spec(spec, Eigen::Vector3d::UnitZ()));
  }
  if (spec.name == "rotation") {
    return rotation_channel(basis, spec.number("theta"),
                            axis_from_spec(spec, Eigen::Vector3d::UnitZ()));
  }
  if (spec.name == "depolarizer") return complete_depolarizer(basis);
  if (spec.name == "two_rotation_depolarizer") {
    const Eigen::Vector3d axis =
        axis_from_spec(spec, Eigen::Vector3d::UnitX());
    return rotation_mixture_channel(
        basis,
        {{0.5, 0.0, Eigen::Vector3d::UnitZ()}, {0.5, M_PI, axis}});
  }
  if (spec.name == "lossless_polarizer") {
    return lossless_polarizer_channel(basis, spec.number("theta", 0.0),
                                      spec.number("phi", 0.0));
  }
  if (spec.name == "kerr") return kerr_unitary(basis, spec.number("chi"));
  fail_schema("unknown channel spec \"" + spec.name + "\"");
}

json stokes_analysis_json(const json& input, double tol) {
  if (!input.is_object() || !input.contains("type")) {
    fail_schema("stokes analysis input needs a \"type\" tag");
  }
  const std::string type = input["type"].get<std::string>();
  StokesVector s;
  json echo;
  if (type == "stokes") {
    s = stokes_from_json(input);
    echo = to_json(s);
  } else if (type == "jones_vector") {
    const JonesVector v = jones_vector_from_json(input);
    s = stokes_from_jones_vector(v);
    echo = to_json(v);
  } else if (type == "coherency") {
    s = stokes_from_coherency(coherency_from_json(input), tol);
    echo = coherency_to_json(coherency_from_json(input));
  } else {
    fail_schema("stokes analysis accepts stokes, jones_vector, or coherency");
  }
  json out = {{"type", "stokes_analysis"},
              {"input", echo},
              {"stokes", to_json(s)},
              {"validity", to_json(validate_stokes(s, tol))}};
  const StokesValidity validity = validate_stokes(s, tol);
  if (validity.valid && s.s0 > 0.0) {
    out["degree_of_polarization"] = degree_of_polarization(s);
    out["decomposition"] = to_json(decompose_polarized_unpolarized(s, tol));
    out["coherency"] = coherency_to_json(coherency_from_stokes(s, tol));
  }
  return out;
}

MuellerMatrix mueller_from_jones_json(const json& input) {
  if (!input.is_object() || !input.contains("type")) {
    fail_schema("expected a jones or jones_mixture object");
  }
  if (input["type"] == "jones") {
    return mueller_from_jones(jones_from_json(input));
  }
  if (input["type"] == "jones_mixture") {
    if (!input.contains("weights") || !input.contains("matrices")) {
      fail_schema("jones_mixture needs \"weights\" and \"matrices\"");
    }
    std::vector<double> weights;
    for (const auto& w : input["weights"]) weights.push_back(w.get<double>());
    std::vector<JonesMatrix> js;
    for (const auto& m : input["matrices"]) js.push_back(jones_from_json(m));
    return mueller_from_jones_mixture(weights, js);
  }
  fail_schema("expected \"type\":\"jones\" or \"jones_mixture\"");
}

json decompose_json(const json& input, double tol) {
  if (!input.is_object() || !input.contains("type")) {
    fail_schema("decompose input needs a \"type\" tag");
  }
  if (input["type"] == "mueller") {
    const MuellerMatrix m = mueller_from_json(input);
    const LuChipmanFactors f = lu_chipman_decompose(m, tol);
    const MuellerMatrix depol = depolarizer(Eigen::Vector3d::Zero(),
                                            f.depolarizer_m);
    const MuellerMatrix recomposed = f.rotation * f.diattenuation * depol;
    return {{"type", "mueller_decomposition"},
            {"rotation", to_json(f.rotation)},
            {"diattenuation", to_json(f.diattenuation)},
            {"depolarizer", to_json(depol)},
            {"rotation_theta", f.rotation_params.theta},
            {"rotation_axis",
             {f.rotation_params.axis[0], f.rotation_params.axis[1],
              f.rotation_params.axis[2]}},
            {"q", f.diattenuation_params.q},
            {"r", f.diattenuation_params.r},
            {"diattenuation_axis",
             {f.diattenuation_params.axis[0], f.diattenuation_params.axis[1],
              f.diattenuation_params.axis[2]}},
            {"degenerate", f.degenerate},
            {"reconstruction_error", (recomposed - m).norm()}};
  }
  if (input["type"] == "jones") {
    const JonesMatrix j = jones_from_json(input);
    const TransformDecomposition d = decompose_jones(j, tol);
    auto [t, j_sl] = scale_factor_decompose(j, tol);
    const PolarFactors pf = polar_decompose(j_sl, tol);
    return {{"type", "jones_decomposition"},
            {"scale_factor", t},
            {"unimodular", jones_to_json(j_sl)},
            {"rotation", jones_to_json(pf.rotation)},
            {"boost", jones_to_json(pf.boost_right)},
            {"boost_left", jones_to_json(pf.boost_left)},
            {"rotation_theta", d.rotation.theta},
            {"rotation_axis",
             {d.rotation.axis[0], d.rotation.axis[1], d.rotation.axis[2]}},
            {"boost_eta", d.boost.eta},
            {"boost_axis",
             {d.boost.axis[0], d.boost.axis[1], d.boost.axis[2]}},
            {"q", d.diattenuation.q},
            {"r", d.diattenuation.r}};
  }
  fail_schema("decompose accepts \"mueller\" or \"jones\" objects");
}

json state_info_json(const FockState& state, double tol) {
  const StokesMoments mo = moments(state);
  json covariance = json::array();
  for (int i = 0; i < 3; ++i) {
    covariance.push_back({mo.covariance(i, 0), mo.covariance(i, 1),
                          mo.covariance(i, 2)});
  }
  const Eigen::VectorXd weights = layer_weights(state);
  json layers = json::array();
  for (int n = 0; n < weights.size(); ++n) {
    if (weights[n] > 1e-14) layers.push_back({{"n", n}, {"weight", weights[n]}});
  }
  json out = {{"type", "state_info"},
              {"n_max", state.basis().n_max()},
              {"kind", state.is_pure() ? "pure" : "density"},
              {"leakage", state.leakage()},
              {"trace", state.trace_norm()},
              {"purity", state.purity()},
              {"stokes", to_json(stokes_vector(state))},
              {"covariance", covariance},
              {"layer_weights", layers},
              {"uncertainty", to_json(uncertainty_report(state))},
              {"perfect_polarization",
               to_json(perfect_polarization_test(state, tol))}};
  if (mo.s0_mean > 0.0) out["degree_of_polarization"] = dop(state);
  return out;
}

json state_stars_json(const FockState& state) {
  const MajoranaConstellation stars = majorana_stars(state);
  json list = json::array();
  for (const auto& star : stars) {
    list.push_back({{"theta", star.theta}, {"phi", star.phi}});
  }
  return {{"type", "majorana_constellation"},
          {"photons", stars.size()},
          {"stars", list}};
}

json channel_mueller_json(const Channel& channel,
                          bool include_coherent_probes) {
  std::vector<FockState> probes = single_photon_probes(channel.basis());
  if (include_coherent_probes) {
    const double amp = std::sqrt(std::max(1, channel.basis().n_max() / 4));
    for (auto& p : coherent_probes(channel.basis(), {0.7 * amp, amp}, 6, 0.45)) {
      probes.push_back(std::move(p));
    }
    if (channel.basis().n_max() >= 2) {
      for (auto& p : layer_probes(channel.basis(), 2, 6)) {
        probes.push_back(std::move(p));
      }
    }
  }
  const InducedMuellerResult result = induced_mueller(channel, probes);
  return {{"type", "channel_mueller"},
          {"label", channel.label()},
          {"induced", to_json(result)},
          {"single_photon", to_json(single_photon_mueller(channel))},
          {"validity", to_json(validate_mueller(result.mueller))},
          {"completeness_defect", channel.completeness_defect()}};
}

json run_qfim_request(const json& request) {
  if (!request.is_object()) fail_schema("qfim request must be a JSON object");
  if (!request.contains("scenario") || !request["scenario"].is_string()) {
    fail_schema("qfim request needs a \"scenario\" string");
  }
  const std::string scenario = request["scenario"].get<std::string>();
  const int n_max = request.value("n_max", 12);
  const double leak = request.value("leakage_threshold", kLeakageThreshold);
  if (!request.contains("state")) fail_schema("qfim request needs \"state\"");
  const FockState probe =
      make_state_from_spec(request["state"].get<std::string>(), n_max, leak);

  json out = {{"type", "qfim_result"}, {"scenario", scenario}};
  if (scenario == "phase") {
    const double q = scenario_phase_qfi(probe);
    out["qfim"] = {{q}};
    out["bound"] = 1.0 / q;
    out["commutativity_residuals"] = {{0.0}};
  } else if (scenario == "loss") {
    const double q = scenario_loss_qfi(probe, request.value("q", 0.9));
    out["qfim"] = {{q}};
    out["bound"] = 1.0 / q;
    out["commutativity_residuals"] = {{0.0}};
  } else if (scenario == "diattenuation") {
    const QfimResult result = scenario_diattenuation_qfim(
        probe, request.value("q", 0.9), request.value("r", 0.9));
    out.update(to_json(result));
    out["type"] = "qfim_result";
    out["bound"] = result.qfim.inverse().trace();
  } else if (scenario == "phase-loss") {
    const QfimResult result = scenario_phase_loss_qfim(
        probe, request.value("theta", 0.0), request.value("q", 0.9));
    out.update(to_json(result));
    out["type"] = "qfim_result";
    out["bound"] = result.qfim.inverse().trace();
  } else if (scenario == "rotation") {
    const std::string par = request.value("parametrization", "axis_angle");
    RotationParametrization parametrization;
    if (par == "axis_angle") {
      parametrization = RotationParametrization::axis_angle;
    } else if (par == "euler_zyz") {
      parametrization = RotationParametrization::euler_zyz;
    } else {
      fail_schema("unknown parametrization \"" + par + "\"");
    }
    Eigen::Vector3d theta = Eigen::Vector3d::Zero();
    if (request.contains("theta")) {
      const json& t = request["theta"];
      if (!t.is_array() || t.size() != 3) {
        fail_schema("rotation theta must be [t1, t2, t3]");
      }
      theta << t[0].get<double>(), t[1].get<double>(), t[2].get<double>();
    }
    const RotationFrame frame = rotation_frame(probe, parametrization, theta);
    out.update(to_json(frame));
    out["type"] = "qfim_result";
    if (frame.covariance_invertible) out["bound"] = frame.wmse_bound;
  } else {
    fail_schema("unknown scenario \"" + scenario + "\"");
  }
  return out;
}

GadgetConfig gadget_config_from_json(const json& config) {
  if (!config.is_object()) fail_schema("gadget config must be a JSON object");
  GadgetConfig cfg;
  if (config.contains("setting")) {
    const std::string setting = config["setting"].get<std::string>();
    if (setting == "S1") {
      cfg.component = StokesComponent::s1;
    } else if (setting == "S2") {
      cfg.component = StokesComponent::s2;
    } else if (setting == "S3") {
      cfg.component = StokesComponent::s3;
    } else {
      fail_schema("gadget setting must be S1, S2, or S3");
    }
    cfg.named = true;
  } else if (config.contains("theta") && config.contains("axis")) {
    cfg.named = false;
    cfg.theta = config["theta"].get<double>();
    const json& axis = config["axis"];
    if (!axis.is_array() || axis.size() != 3) {
      fail_schema("gadget axis must be [x, y, z]");
    }
    cfg.axis << axis[0].get<double>(), axis[1].get<double>(),
        axis[2].get<double>();
    const double len = cfg.axis.norm();
    if (len < 1e-12) fail_schema("gadget axis must be nonzero");
    cfg.axis /= len;
  } else {
    fail_schema("gadget config needs \"setting\" or \"theta\"+\"axis\"");
  }
  cfg.shots = config.value("shots", 1ULL);
  cfg.seed = config.value("seed", 0ULL);
  cfg.mass_tolerance = config.value("mass_tolerance", 1e-9);
  return cfg;
}

}  // namespace polab
