#include "core/json_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace polab {

namespace {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void dump_canonical(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      // nlohmann objects iterate in sorted key order already.
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_canonical(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_canonical(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
      break;
  }
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail_schema(where + ": complex entries must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void require_type(const json& j, const std::string& tag) {
  if (!j.is_object()) fail_schema("expected a JSON object for \"" + tag + "\"");
  if (!j.contains("type") || j["type"] != tag) {
    fail_schema("expected \"type\":\"" + tag + "\"");
  }
}

json matrix2_to_json(const Eigen::Matrix2cd& m) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int k = 0; k < 2; ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Eigen::Matrix2cd matrix2_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    fail_schema(where + ": matrix must have 2 rows");
  }
  Eigen::Matrix2cd m;
  for (std::size_t i = 0; i < 2; ++i) {
    if (!j[i].is_array() || j[i].size() != 2) {
      fail_schema(where + ": row " + std::to_string(i) + " must have 2 entries");
    }
    for (std::size_t k = 0; k < 2; ++k) {
      m(static_cast<int>(i), static_cast<int>(k)) =
          complex_from_json(j[i][k], where);
    }
  }
  return m;
}

json matrix3_to_json(const Eigen::Matrix3d& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int k = 0; k < 3; ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

json matrixx_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

json cmatrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXcd cmatrix_from_json(const json& j, int dim,
                                   const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    fail_schema(where + ": matrix must have " + std::to_string(dim) + " rows");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      fail_schema(where + ": row " + std::to_string(i) + " must have " +
                  std::to_string(dim) + " entries");
    }
    for (int k = 0; k < dim; ++k) {
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], where);
    }
  }
  return m;
}

template <typename Fn>
auto schema_guard(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    // Wrong JSON value types surface as schema errors with context.
    fail_schema(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string canonical_dump(const json& j) {
  std::string out;
  dump_canonical(j, out);
  return out;
}

json to_json(const StokesVector& s) {
  return {{"type", "stokes"}, {"s", {s.s0, s.s1, s.s2, s.s3}}};
}

StokesVector stokes_from_json(const json& j) {
  return schema_guard("stokes", [&] {
    require_type(j, "stokes");
    if (!j.contains("s") || !j["s"].is_array() || j["s"].size() != 4) {
      fail_schema("stokes: field \"s\" must be [s0, s1, s2, s3]");
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (!j["s"][i].is_number()) {
        fail_schema("stokes: component " + std::to_string(i) + " is not a number");
      }
    }
    return StokesVector{j["s"][0].get<double>(), j["s"][1].get<double>(),
                        j["s"][2].get<double>(), j["s"][3].get<double>()};
  });
}

json to_json(const JonesVector& v) {
  return {{"type", "jones_vector"},
          {"a", complex_to_json(v.a)},
          {"b", complex_to_json(v.b)}};
}

JonesVector jones_vector_from_json(const json& j) {
  return schema_guard("jones_vector", [&] {
    require_type(j, "jones_vector");
    if (!j.contains("a") || !j.contains("b")) {
      fail_schema("jones_vector: fields \"a\" and \"b\" required");
    }
    return JonesVector{complex_from_json(j["a"], "jones_vector.a"),
                       complex_from_json(j["b"], "jones_vector.b")};
  });
}

json coherency_to_json(const CoherencyMatrix& m) {
  return {{"type", "coherency"}, {"matrix", matrix2_to_json(m)}};
}

CoherencyMatrix coherency_from_json(const json& j) {
  return schema_guard("coherency", [&] {
    require_type(j, "coherency");
    if (!j.contains("matrix")) fail_schema("coherency: field \"matrix\" required");
    return matrix2_from_json(j["matrix"], "coherency.matrix");
  });
}

json jones_to_json(const JonesMatrix& m) {
  return {{"type", "jones"}, {"matrix", matrix2_to_json(m)}};
}

JonesMatrix jones_from_json(const json& j) {
  return schema_guard("jones", [&] {
    require_type(j, "jones");
    if (!j.contains("matrix")) fail_schema("jones: field \"matrix\" required");
    return matrix2_from_json(j["matrix"], "jones.matrix");
  });
}

json to_json(const MuellerMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return {{"type", "mueller"}, {"matrix", rows}};
}

MuellerMatrix mueller_from_json(const json& j) {
  return schema_guard("mueller", [&] {
    require_type(j, "mueller");
    if (!j.contains("matrix") || !j["matrix"].is_array() ||
        j["matrix"].size() != 4) {
      fail_schema("mueller: field \"matrix\" must have 4 rows");
    }
    MuellerMatrix m;
    for (std::size_t i = 0; i < 4; ++i) {
      const json& row = j["matrix"][i];
      if (!row.is_array() || row.size() != 4) {
        fail_schema("mueller: row " + std::to_string(i) + " must have 4 entries");
      }
      for (std::size_t k = 0; k < 4; ++k) {
        if (!row[k].is_number()) {
          fail_schema("mueller: entry (" + std::to_string(i) + "," +
                      std::to_string(k) + ") is not a number");
        }
        m(static_cast<int>(i), static_cast<int>(k)) = row[k].get<double>();
      }
    }
    return m;
  });
}

json to_json(const FockState& state) {
  json entries = json::array();
  const double cut = 0.0;
  if (state.is_pure()) {
    const auto& amp = state.amplitudes();
    for (int idx = 0; idx < amp.size(); ++idx) {
      if (std::abs(amp[idx]) <= cut) continue;
      const auto [m, n] = state.basis().modes(idx);
      entries.push_back(
          {{"m", m}, {"n", n}, {"re", amp[idx].real()}, {"im", amp[idx].imag()}});
    }
  } else {
    const auto& rho = state.rho();
    for (int i = 0; i < rho.rows(); ++i) {
      for (int k = 0; k < rho.cols(); ++k) {
        if (std::abs(rho(i, k)) <= cut) continue;
        const auto [m1, n1] = state.basis().modes(i);
        const auto [m2, n2] = state.basis().modes(k);
        entries.push_back({{"row", {m1, n1}},
                           {"col", {m2, n2}},
                           {"re", rho(i, k).real()},
                           {"im", rho(i, k).imag()}});
      }
    }
  }
  return {{"type", "fock_state"},
          {"n_max", state.basis().n_max()},
          {"kind", state.is_pure() ? "pure" : "density"},
          {"entries", entries},
          {"leakage", state.leakage()}};
}

FockState fock_state_from_json(const json& j) {
  return schema_guard("fock_state", [&] {
    require_type(j, "fock_state");
    if (!j.contains("n_max") || !j["n_max"].is_number_integer()) {
      fail_schema("fock_state: integer field \"n_max\" required");
    }
    const FockBasis basis(j["n_max"].get<int>());
    const std::string kind = j.value("kind", "");
    const double leakage = j.value("leakage", 0.0);
    if (!j.contains("entries") || !j["entries"].is_array()) {
      fail_schema("fock_state: array field \"entries\" required");
    }
    const json& entries = j["entries"];
    auto mode_pair = [&](const json& e, const char* key,
                         std::size_t i) -> std::pair<int, int> {
      if (!e.contains(key) || !e[key].is_array() || e[key].size() != 2) {
        fail_schema("fock_state: entry " + std::to_string(i) + " field \"" +
                    key + "\" must be [m, n]");
      }
      return {e[key][0].get<int>(), e[key][1].get<int>()};
    };
    if (kind == "pure") {
      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const json& e = entries[i];
        if (!e.contains("m") || !e.contains("n")) {
          fail_schema("fock_state: pure entry " + std::to_string(i) +
                      " needs fields \"m\" and \"n\"");
        }
        const int m = e["m"].get<int>();
        const int n = e["n"].get<int>();
        if (m < 0 || n < 0 || m + n > basis.n_max()) {
          fail_schema("fock_state: entry " + std::to_string(i) +
                      " outside the truncated basis");
        }
        amp[basis.index(m, n)] = cplx(e.value("re", 0.0), e.value("im", 0.0));
      }
      return FockState::pure(basis, std::move(amp), leakage);
    }
    if (kind == "density") {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const json& e = entries[i];
        const auto [m1, n1] = mode_pair(e, "row", i);
        const auto [m2, n2] = mode_pair(e, "col", i);
        if (m1 + n1 > basis.n_max() || m2 + n2 > basis.n_max() || m1 < 0 ||
            n1 < 0 || m2 < 0 || n2 < 0) {
          fail_schema("fock_state: entry " + std::to_string(i) +
                      " outside the truncated basis");
        }
        rho(basis.index(m1, n1), basis.index(m2, n2)) =
            cplx(e.value("re", 0.0), e.value("im", 0.0));
      }
      return FockState::density(basis, std::move(rho), leakage);
    }
    fail_schema("fock_state: \"kind\" must be \"pure\" or \"density\"");
  });
}

json to_json(const Channel& channel) {
  json ops = json::array();
  if (channel.kind() == Channel::Kind::kraus_list) {
    for (const auto& k : channel.kraus_ops()) ops.push_back(cmatrix_to_json(k));
  }
  return {{"type", "kraus_channel"},
          {"kind", channel.kind() == Channel::Kind::kraus_list ? "kraus"
                                                               : "twirl"},
          {"n_max", channel.basis().n_max()},
          {"ops", ops},
          {"label", channel.label()}};
}

Channel channel_from_json(const json& j) {
  return schema_guard("kraus_channel", [&] {
    require_type(j, "kraus_channel");
    if (!j.contains("n_max") || !j["n_max"].is_number_integer()) {
      fail_schema("kraus_channel: integer field \"n_max\" required");
    }
    const FockBasis basis(j["n_max"].get<int>());
    const std::string kind = j.value("kind", "kraus");
    if (kind == "twirl") return Channel::layer_twirl(basis);
    if (!j.contains("ops") || !j["ops"].is_array() || j["ops"].empty()) {
      fail_schema("kraus_channel: nonempty array field \"ops\" required");
    }
    std::vector<Eigen::MatrixXcd> ops;
    for (std::size_t i = 0; i < j["ops"].size(); ++i) {
      ops.push_back(cmatrix_from_json(j["ops"][i], basis.dim(),
                                      "kraus_channel.ops[" + std::to_string(i) +
                                          "]"));
    }
    return Channel::kraus(basis, std::move(ops), j.value("label", "channel"));
  });
}

json to_json(const MuellerValidityReport& report) {
  return {{"type", "mueller_validity"},
          {"trace_bound_excess", report.trace_bound_excess},
          {"transmittance", report.transmittance},
          {"reverse_transmittance", report.reverse_transmittance},
          {"cloude_eigenvalues",
           {report.cloude_eigenvalues[0], report.cloude_eigenvalues[1],
            report.cloude_eigenvalues[2], report.cloude_eigenvalues[3]}},
          {"lorentz_invariant_residual", report.lorentz_invariant_residual},
          {"deterministic", report.deterministic},
          {"cloude_positive", report.cloude_positive},
          {"transmittance_ok", report.transmittance_ok},
          {"reverse_transmittance_ok", report.reverse_transmittance_ok},
          {"transmittance_boundary", report.transmittance_boundary},
          {"physical", report.physical}};
}

json to_json(const StokesValidity& report) {
  return {{"type", "stokes_validity"},
          {"s0_nonnegative", report.s0_nonnegative},
          {"norm_excess", report.norm_excess},
          {"min_coherency_eigenvalue", report.min_coherency_eigenvalue},
          {"valid", report.valid},
          {"boundary", report.boundary}};
}

json to_json(const PolarizationDecomposition& d) {
  json out = {{"type", "polarization_decomposition"},
              {"p", d.p},
              {"intensity", d.intensity},
              {"direction_defined", d.direction_defined}};
  if (d.direction_defined) {
    out["theta"] = d.theta;
    out["phi"] = d.phi;
  }
  return out;
}

json to_json(const QfimResult& result) {
  json out = {{"type", "qfim"},
              {"qfim", matrixx_to_json(result.qfim)},
              {"commutativity_residuals",
               matrixx_to_json(result.commutativity_residuals)}};
  if (result.scalar_bound) out["bound"] = *result.scalar_bound;
  return out;
}

json to_json(const RotationFrame& frame) {
  json out = {{"type", "rotation_frame"},
              {"generator_matrix", matrix3_to_json(frame.generator_matrix)},
              {"covariance", matrix3_to_json(frame.covariance)},
              {"covariance_invertible", frame.covariance_invertible},
              {"qfim", matrix3_to_json(frame.qfim)}};
  if (frame.covariance_invertible) {
    out["wmse_bound"] = frame.wmse_bound;
  } else {
    out["null_direction"] = {frame.null_direction[0], frame.null_direction[1],
                             frame.null_direction[2]};
  }
  return out;
}

json to_json(const UncertaintyReport& report) {
  return {{"type", "uncertainty_report"},
          {"var_s1", report.var_s1},
          {"var_s2", report.var_s2},
          {"var_s3", report.var_s3},
          {"s0_mean", report.s0_mean},
          {"product_bound_margin", report.product_bound_margin},
          {"sum_bound_margin", report.sum_bound_margin},
          {"classical_margin_unknown_s0", report.classical_margin_unknown_s0},
          {"classical_margin_known_s0", report.classical_margin_known_s0}};
}

json to_json(const PerfectPolarizationReport& report) {
  return {{"type", "perfect_polarization"},
          {"dop", report.dop_value},
          {"perfectly_polarized", report.perfectly_polarized},
          {"orthogonal_mode_occupation", report.orthogonal_mode_occupation},
          {"direction_defined", report.direction_defined}};
}

json to_json(const InducedMuellerResult& result) {
  return {{"type", "induced_mueller"},
          {"mueller", to_json(result.mueller)["matrix"]},
          {"residual", result.residual},
          {"probe_count", result.probe_count}};
}

json to_json(const Table& table) {
  json rows = json::array();
  for (const auto& row : table.rows) rows.push_back(row);
  return {{"columns", table.columns}, {"rows", rows}};
}

json to_json(const ExperimentReport& report) {
  json tables = json::object();
  for (const auto& [name, table] : report.tables) tables[name] = to_json(table);
  json flags = json::array();
  for (const auto& flag : report.flags) {
    flags.push_back({{"name", flag.name},
                     {"passed", flag.passed},
                     {"value", flag.value},
                     {"threshold", flag.threshold},
                     {"comparison", flag.comparison}});
  }
  return {{"type", "experiment_report"},
          {"name", report.name},
          {"inputs", json::parse(report.inputs_echo.empty()
                                     ? std::string("null")
                                     : report.inputs_echo)},
          {"tables", tables},
          {"flags", flags},
          {"all_passed", report.all_passed()}};
}

json to_json(const StokesEstimate& estimate) {
  return {{"type", "stokes_estimate"},
          {"estimate",
           {estimate.value.s0, estimate.value.s1, estimate.value.s2,
            estimate.value.s3}},
          {"standard_error",
           {estimate.standard_error[0], estimate.standard_error[1],
            estimate.standard_error[2], estimate.standard_error[3]}},
          {"shots", estimate.shots},
          {"seed", estimate.seed}};
}

json to_json(const CountRecord& record, std::uint64_t max_listed_shots) {
  json out = {{"type", "count_record"},
              {"shots", record.shots},
              {"mean_difference_half", record.mean_difference_half},
              {"var_difference_half", record.var_difference_half},
              {"mean_total_half", record.mean_total_half},
              {"var_total_half", record.var_total_half},
              {"distribution_deficit", record.distribution_deficit}};
  std::map<std::pair<int, int>, std::uint64_t> histogram;
  for (const auto& c : record.counts) ++histogram[c];
  json hist = json::array();
  for (const auto& [outcome, count] : histogram) {
    hist.push_back({{"n1", outcome.first},
                    {"n2", outcome.second},
                    {"count", count}});
  }
  out["histogram"] = hist;
  if (record.shots <= max_listed_shots) {
    json shots = json::array();
    for (const auto& c : record.counts) shots.push_back({c.first, c.second});
    out["counts"] = shots;
  }
  return out;
}

json reencode_tagged(const json& j) {
  return schema_guard("tagged object", [&] {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
      fail_schema("object has no \"type\" tag");
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "stokes") return to_json(stokes_from_json(j));
    if (type == "jones_vector") return to_json(jones_vector_from_json(j));
    if (type == "coherency") return coherency_to_json(coherency_from_json(j));
    if (type == "jones") return jones_to_json(jones_from_json(j));
    if (type == "mueller") return to_json(mueller_from_json(j));
    if (type == "fock_state") return to_json(fock_state_from_json(j));
    if (type == "kraus_channel") return to_json(channel_from_json(j));
    fail_schema("unknown object type \"" + type + "\"");
  });
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_schema("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail_schema("JSON parse error in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail_schema("cannot open file for writing: " + path);
  out << canonical_dump(j) << "\n";
  if (!out) fail_schema("write failed: " + path);
}

std::string table_to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace polab
