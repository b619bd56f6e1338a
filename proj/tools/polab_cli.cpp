// Command-line front end for the polab shared library.  All computation
// happens behind the C interface; this layer parses arguments, moves JSON
// between files and the library, and renders tables as CSV on request.
//
// Exit codes: 0 success, 1 physical-validation failure, 2 input/schema
// error (other failures also map to 2).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polab/polab.h"

namespace {

using nlohmann::json;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliError{code, message};
}

int exit_code_for(polab_status status) {
  switch (status) {
    case POLAB_OK: return 0;
    case POLAB_ERR_PHYSICAL: return 1;
    default: return 2;
  }
}

void check(polab_status status) {
  if (status != POLAB_OK) {
    fail(exit_code_for(status), polab_last_error());
  }
}

std::string take_string(char* owned) {
  std::string out = owned ? owned : "";
  polab_string_free(owned);
  return out;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) fail(2, "cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) fail(2, "cannot open output file: " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
}

// Flatten the named table of a report into CSV; with an empty name, the
// report's only table is used.
std::string report_table_csv(const std::string& report_json,
                             const std::string& table_name) {
  json report;
  try {
    report = json::parse(report_json);
  } catch (const json::parse_error& e) {
    fail(2, std::string("internal: report is not JSON: ") + e.what());
  }
  if (!report.contains("tables") || report["tables"].empty()) {
    fail(2, "report has no tables; use --format json");
  }
  const json& tables = report["tables"];
  json table;
  if (!table_name.empty()) {
    if (!tables.contains(table_name)) {
      std::string known;
      for (auto it = tables.begin(); it != tables.end(); ++it) {
        known += (known.empty() ? "" : ", ") + it.key();
      }
      fail(2, "unknown table \"" + table_name + "\" (have: " + known + ")");
    }
    table = tables[table_name];
  } else if (tables.size() == 1) {
    table = tables.begin().value();
  } else {
    std::string known;
    for (auto it = tables.begin(); it != tables.end(); ++it) {
      known += (known.empty() ? "" : ", ") + it.key();
    }
    fail(2, "report has several tables; pick one with --table (" + known + ")");
  }
  std::string csv;
  for (std::size_t i = 0; i < table["columns"].size(); ++i) {
    if (i) csv += ',';
    csv += table["columns"][i].get<std::string>();
  }
  csv += '\n';
  for (const auto& row : table["rows"]) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) csv += ',';
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", row[i].get<double>());
      csv += buf;
    }
    csv += '\n';
  }
  return csv;
}

struct StateHandle {
  polab_state* ptr = nullptr;
  ~StateHandle() { polab_state_free(ptr); }
};

struct ChannelHandle {
  polab_channel* ptr = nullptr;
  ~ChannelHandle() { polab_channel_free(ptr); }
};

// Loads a state from --state spec or --input JSON file.
void load_state(const std::string& spec, const std::string& input, int n_max,
                double leak, StateHandle& handle) {
  if (!spec.empty()) {
    check(polab_state_make(spec.c_str(), n_max, leak, &handle.ptr));
  } else {
    const std::string text = read_input(input);
    check(polab_state_from_json(text.c_str(), &handle.ptr));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polab: classical and quantum polarization calculus"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_version_flag("--version", polab_version());

  std::string input;
  std::string output;
  std::string format = "json";
  std::string table_name;
  int n_max = 12;
  double tol = 1e-10;
  double leak = 1e-12;
  std::uint64_t seed = 0;
  app.add_option("-i,--input", input, "input file (JSON); '-' for stdin")
      ->capture_default_str();
  app.add_option("-o,--output", output, "output file; '-' for stdout")
      ->capture_default_str();
  app.add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--table", table_name, "table to export when --format csv");
  app.add_option("--n-max", n_max, "Fock truncation")->capture_default_str();
  app.add_option("--tol", tol, "algebraic tolerance")->capture_default_str();
  app.add_option("--leakage-threshold", leak, "truncation leakage threshold")
      ->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();

  // stokes
  auto* cmd_stokes = app.add_subcommand(
      "stokes", "analyze a stokes/jones_vector/coherency object");

  // mueller
  auto* cmd_mueller = app.add_subcommand("mueller", "Mueller matrix tools");
  cmd_mueller->require_subcommand(1);
  auto* cmd_mueller_validate = cmd_mueller->add_subcommand(
      "validate", "physicality diagnostics for a Mueller matrix");
  auto* cmd_mueller_decompose = cmd_mueller->add_subcommand(
      "decompose", "factor a Mueller (or Jones) matrix");
  auto* cmd_mueller_from_jones = cmd_mueller->add_subcommand(
      "from-jones", "Mueller matrix of a Jones matrix or weighted mixture");

  // state
  std::string state_spec;
  auto* cmd_state = app.add_subcommand("state", "two-mode Fock states");
  cmd_state->require_subcommand(1);
  auto* cmd_state_make =
      cmd_state->add_subcommand("make", "build a state from --spec");
  cmd_state_make->add_option("--spec", state_spec, "state spec")->required();
  auto* cmd_state_info =
      cmd_state->add_subcommand("info", "moments and diagnostics");
  cmd_state_info->add_option("--spec", state_spec, "state spec");
  auto* cmd_state_stars =
      cmd_state->add_subcommand("stars", "stellar representation");
  cmd_state_stars->add_option("--spec", state_spec, "state spec");

  // channel
  std::string channel_spec;
  std::string channel_file;
  bool coherent_probes = false;
  auto* cmd_channel = app.add_subcommand("channel", "quantum channels");
  cmd_channel->require_subcommand(1);
  auto* cmd_channel_apply =
      cmd_channel->add_subcommand("apply", "apply a channel to a state");
  auto* cmd_channel_mueller = cmd_channel->add_subcommand(
      "mueller", "induced Mueller matrix of a channel");
  for (auto* cmd : {cmd_channel_apply, cmd_channel_mueller}) {
    cmd->add_option("--channel", channel_spec, "channel spec");
    cmd->add_option("--channel-file", channel_file, "channel JSON file");
  }
  cmd_channel_apply->add_option("--state", state_spec, "input state spec");
  cmd_channel_mueller->add_flag("--coherent-probes", coherent_probes,
                                "add intensity-scaled coherent probes");

  // qfim
  auto* cmd_qfim = app.add_subcommand("qfim", "quantum Fisher information");
  cmd_qfim->require_subcommand(1);
  double q_param = 0.9, r_param = 0.9, theta_param = 0.0;
  std::string parametrization = "axis_angle";
  std::string sweep;
  std::map<std::string, CLI::App*> qfim_cmds;
  for (const char* name :
       {"phase", "loss", "diattenuation", "rotation", "phase-loss"}) {
    auto* sub = cmd_qfim->add_subcommand(name);
    sub->add_option("--state", state_spec, "probe state spec")->required();
    qfim_cmds[name] = sub;
  }
  qfim_cmds["loss"]->add_option("--q", q_param, "survival probability");
  qfim_cmds["loss"]->add_option(
      "--sweep", sweep, "sweep q over start:stop:count, CSV table output");
  qfim_cmds["diattenuation"]->add_option("--q", q_param, "mode-a survival");
  qfim_cmds["diattenuation"]->add_option("--r", r_param, "mode-b survival");
  qfim_cmds["phase-loss"]->add_option("--theta", theta_param, "phase");
  qfim_cmds["phase-loss"]->add_option("--q", q_param, "survival probability");
  qfim_cmds["rotation"]->add_option("--parametrization", parametrization,
                                    "axis_angle or euler_zyz");

  // simulate gadget
  std::string setting = "S3";
  std::uint64_t shots = 1000;
  double gadget_theta = 0.0;
  std::vector<double> gadget_axis;
  auto* cmd_simulate = app.add_subcommand("simulate", "polarimeter simulation");
  auto* cmd_gadget = cmd_simulate->add_subcommand(
      "gadget", "photon-counting measurement of one Stokes setting");
  cmd_gadget->add_option("--state", state_spec, "input state spec");
  cmd_gadget->add_option("--setting", setting, "S1, S2, or S3")
      ->check(CLI::IsMember({"S1", "S2", "S3"}));
  auto* gadget_theta_opt = cmd_gadget->add_option(
      "--theta", gadget_theta, "explicit rotation angle (with --axis)");
  cmd_gadget
      ->add_option("--axis", gadget_axis, "explicit rotation axis x y z")
      ->expected(3)
      ->needs(gadget_theta_opt);
  cmd_gadget->add_option("--shots", shots, "number of shots");
  auto* cmd_estimate = cmd_simulate->add_subcommand(
      "estimate", "full Stokes estimate from all settings");
  cmd_estimate->add_option("--state", state_spec, "input state spec");
  cmd_estimate->add_option("--shots", shots, "shots per setting");

  // experiment
  std::string experiment_name;
  std::string experiment_params = "{}";
  auto* cmd_experiment =
      app.add_subcommand("experiment", "classical-intuition experiments");
  cmd_experiment
      ->add_option("name", experiment_name,
                   "subset-trace | anisotropy | decompositions | higher-order "
                   "| attenuated-isotropic")
      ->required();
  cmd_experiment->add_option("--params", experiment_params,
                             "experiment parameters as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    std::string result;

    if (cmd_stokes->parsed()) {
      char* out = nullptr;
      check(polab_stokes_analyze(read_input(input).c_str(), tol, &out));
      result = take_string(out);
      // Invalid classical input is a physical-validation failure.
      const json parsed = json::parse(result);
      write_output(output, result);
      return parsed["validity"]["valid"].get<bool>() ? 0 : 1;
    }

    if (cmd_mueller_validate->parsed()) {
      char* out = nullptr;
      check(polab_mueller_validate(read_input(input).c_str(), tol, &out));
      result = take_string(out);
      const json parsed = json::parse(result);
      write_output(output, result);
      return parsed["physical"].get<bool>() ? 0 : 1;
    }
    if (cmd_mueller_decompose->parsed()) {
      char* out = nullptr;
      check(polab_mueller_decompose(read_input(input).c_str(), tol, &out));
      write_output(output, take_string(out));
      return 0;
    }
    if (cmd_mueller_from_jones->parsed()) {
      char* out = nullptr;
      check(polab_mueller_from_jones(read_input(input).c_str(), &out));
      write_output(output, take_string(out));
      return 0;
    }

    if (cmd_state_make->parsed() || cmd_state_info->parsed() ||
        cmd_state_stars->parsed()) {
      StateHandle state;
      load_state(state_spec, input, n_max, leak, state);
      char* out = nullptr;
      if (cmd_state_make->parsed()) {
        check(polab_state_to_json(state.ptr, &out));
      } else if (cmd_state_info->parsed()) {
        check(polab_state_info(state.ptr, tol, &out));
      } else {
        check(polab_state_stars(state.ptr, &out));
      }
      write_output(output, take_string(out));
      return 0;
    }

    if (cmd_channel_apply->parsed() || cmd_channel_mueller->parsed()) {
      ChannelHandle channel;
      if (!channel_spec.empty()) {
        check(polab_channel_make(channel_spec.c_str(), n_max, &channel.ptr));
      } else if (!channel_file.empty()) {
        check(polab_channel_from_json(read_input(channel_file).c_str(),
                                      &channel.ptr));
      } else {
        fail(2, "need --channel or --channel-file");
      }
      char* out = nullptr;
      if (cmd_channel_apply->parsed()) {
        StateHandle state;
        load_state(state_spec, input, n_max, leak, state);
        StateHandle result_state;
        check(polab_channel_apply(channel.ptr, state.ptr, &result_state.ptr));
        check(polab_state_to_json(result_state.ptr, &out));
      } else {
        check(polab_channel_mueller(channel.ptr, coherent_probes ? 1 : 0,
                                    &out));
      }
      write_output(output, take_string(out));
      return 0;
    }

    for (auto& [name, sub] : qfim_cmds) {
      if (!sub->parsed()) continue;
      json request = {{"scenario", name},
                      {"state", state_spec},
                      {"n_max", n_max},
                      {"leakage_threshold", leak}};
      if (name == "loss" || name == "diattenuation" || name == "phase-loss") {
        request["q"] = q_param;
      }
      if (name == "diattenuation") request["r"] = r_param;
      if (name == "phase-loss") request["theta"] = theta_param;
      if (name == "rotation") request["parametrization"] = parametrization;

      if (name == "loss" && !sweep.empty()) {
        // start:stop:count sweep emitted as a CSV table.
        double start = 0.0, stop = 0.0;
        int count = 0;
        if (std::sscanf(sweep.c_str(), "%lf:%lf:%d", &start, &stop, &count) !=
                3 ||
            count < 2) {
          fail(2, "sweep wants start:stop:count with count >= 2");
        }
        std::string csv = "q,qfim,bound\n";
        for (int k = 0; k < count; ++k) {
          request["q"] = start + (stop - start) * k / (count - 1);
          char* out = nullptr;
          check(polab_qfim(request.dump().c_str(), &out));
          const json r = json::parse(take_string(out));
          char buf[128];
          std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n",
                        request["q"].get<double>(),
                        r["qfim"][0][0].get<double>(),
                        r["bound"].get<double>());
          csv += buf;
        }
        write_output(output, csv);
        return 0;
      }

      char* out = nullptr;
      check(polab_qfim(request.dump().c_str(), &out));
      write_output(output, take_string(out));
      return 0;
    }

    if (cmd_gadget->parsed()) {
      StateHandle state;
      load_state(state_spec, input, n_max, leak, state);
      json config = {{"shots", shots}, {"seed", seed}};
      if (gadget_axis.size() == 3) {
        config["theta"] = gadget_theta;
        config["axis"] = gadget_axis;
      } else {
        config["setting"] = setting;
      }
      char* out = nullptr;
      check(polab_simulate_gadget(state.ptr, config.dump().c_str(), &out));
      write_output(output, take_string(out));
      return 0;
    }
    if (cmd_estimate->parsed()) {
      StateHandle state;
      load_state(state_spec, input, n_max, leak, state);
      char* out = nullptr;
      check(polab_estimate_stokes(state.ptr, shots, seed, &out));
      write_output(output, take_string(out));
      return 0;
    }

    if (cmd_experiment->parsed()) {
      char* out = nullptr;
      check(polab_run_experiment(experiment_name.c_str(),
                                 experiment_params.c_str(), &out));
      result = take_string(out);
      if (format == "csv") {
        write_output(output, report_table_csv(result, table_name));
      } else {
        write_output(output, result);
      }
      const json parsed = json::parse(result);
      return parsed["all_passed"].get<bool>() ? 0 : 1;
    }

    fail(2, "no subcommand executed");
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
