#include "polab/polab.h"

#include <cstring>
#include <new>
#include <string>

#include "core/specs.hpp"

// C binding: thin translation layer over the core library.  Exceptions are
// caught at the boundary and mapped to status codes; failure messages are
// kept per thread.

struct polab_state {
  polab::FockState value;
};

struct polab_channel {
  polab::Channel value;
};

namespace {

thread_local std::string g_last_error;

polab_status status_from(const polab::Error& e) {
  g_last_error = e.what();
  switch (e.kind()) {
    case polab::ErrorKind::physical: return POLAB_ERR_PHYSICAL;
    case polab::ErrorKind::schema: return POLAB_ERR_SCHEMA;
    case polab::ErrorKind::argument: return POLAB_ERR_ARGUMENT;
    case polab::ErrorKind::internal: return POLAB_ERR_INTERNAL;
  }
  return POLAB_ERR_INTERNAL;
}

template <typename Fn>
polab_status guarded(Fn&& fn) {
  try {
    fn();
    return POLAB_OK;
  } catch (const polab::Error& e) {
    return status_from(e);
  } catch (const polab::json::exception& e) {
    g_last_error = e.what();
    return POLAB_ERR_SCHEMA;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return POLAB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return POLAB_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const polab::json& j, char** result_json) {
  if (result_json == nullptr) polab::fail_argument("null output pointer");
  *result_json = copy_string(polab::canonical_dump(j));
}

polab::json parse(const char* text, const char* what) {
  if (text == nullptr) {
    polab::fail_schema(std::string(what) + ": null input");
  }
  try {
    return polab::json::parse(text);
  } catch (const polab::json::parse_error& e) {
    polab::fail_schema(std::string(what) + ": " + e.what());
  }
}

const polab::FockState& deref(const polab_state* state) {
  if (state == nullptr) polab::fail_argument("null state handle");
  return state->value;
}

const polab::Channel& deref(const polab_channel* channel) {
  if (channel == nullptr) polab::fail_argument("null channel handle");
  return channel->value;
}

}  // namespace

extern "C" {

const char* polab_version(void) { return "1.0.0"; }

const char* polab_last_error(void) { return g_last_error.c_str(); }

void polab_string_free(char* s) { delete[] s; }

void polab_state_free(polab_state* state) { delete state; }

void polab_channel_free(polab_channel* channel) { delete channel; }

polab_status polab_stokes_analyze(const char* input_json, double tol,
                                  char** result_json) {
  return guarded([&] {
    emit(polab::stokes_analysis_json(parse(input_json, "stokes input"), tol),
         result_json);
  });
}

polab_status polab_mueller_from_jones(const char* input_json,
                                      char** result_json) {
  return guarded([&] {
    emit(polab::to_json(
             polab::mueller_from_jones_json(parse(input_json, "jones input"))),
         result_json);
  });
}

polab_status polab_mueller_validate(const char* mueller_json, double tol,
                                    char** result_json) {
  return guarded([&] {
    const polab::MuellerMatrix m =
        polab::mueller_from_json(parse(mueller_json, "mueller input"));
    emit(polab::to_json(polab::validate_mueller(m, tol)), result_json);
  });
}

polab_status polab_mueller_decompose(const char* input_json, double tol,
                                     char** result_json) {
  return guarded([&] {
    emit(polab::decompose_json(parse(input_json, "decompose input"), tol),
         result_json);
  });
}

polab_status polab_state_make(const char* spec, int n_max,
                              double leakage_threshold, polab_state** state) {
  return guarded([&] {
    if (spec == nullptr || state == nullptr) {
      polab::fail_argument("null spec or output pointer");
    }
    *state = new polab_state{
        polab::make_state_from_spec(spec, n_max, leakage_threshold)};
  });
}

polab_status polab_state_from_json(const char* json, polab_state** state) {
  return guarded([&] {
    if (state == nullptr) polab::fail_argument("null output pointer");
    *state = new polab_state{
        polab::fock_state_from_json(parse(json, "fock_state"))};
  });
}

polab_status polab_state_to_json(const polab_state* state,
                                 char** result_json) {
  return guarded([&] { emit(polab::to_json(deref(state)), result_json); });
}

polab_status polab_state_info(const polab_state* state, double tol,
                              char** result_json) {
  return guarded([&] {
    emit(polab::state_info_json(deref(state), tol), result_json);
  });
}

polab_status polab_state_stars(const polab_state* state, char** result_json) {
  return guarded([&] {
    emit(polab::state_stars_json(deref(state)), result_json);
  });
}

polab_status polab_state_rotate(const polab_state* state, double theta,
                                const double axis[3], polab_state** rotated) {
  return guarded([&] {
    if (axis == nullptr || rotated == nullptr) {
      polab::fail_argument("null axis or output pointer");
    }
    Eigen::Vector3d n(axis[0], axis[1], axis[2]);
    const double len = n.norm();
    if (len < 1e-12) polab::fail_argument("rotation axis must be nonzero");
    *rotated =
        new polab_state{polab::rotate(deref(state), theta, n / len)};
  });
}

polab_status polab_channel_make(const char* spec, int n_max,
                                polab_channel** channel) {
  return guarded([&] {
    if (spec == nullptr || channel == nullptr) {
      polab::fail_argument("null spec or output pointer");
    }
    *channel = new polab_channel{polab::make_channel_from_spec(spec, n_max)};
  });
}

polab_status polab_channel_from_json(const char* json,
                                     polab_channel** channel) {
  return guarded([&] {
    if (channel == nullptr) polab::fail_argument("null output pointer");
    *channel = new polab_channel{
        polab::channel_from_json(parse(json, "kraus_channel"))};
  });
}

polab_status polab_channel_to_json(const polab_channel* channel,
                                   char** result_json) {
  return guarded([&] { emit(polab::to_json(deref(channel)), result_json); });
}

polab_status polab_channel_apply(const polab_channel* channel,
                                 const polab_state* state,
                                 polab_state** output) {
  return guarded([&] {
    if (output == nullptr) polab::fail_argument("null output pointer");
    *output = new polab_state{deref(channel).apply(deref(state))};
  });
}

polab_status polab_channel_mueller(const polab_channel* channel,
                                   int include_coherent_probes,
                                   char** result_json) {
  return guarded([&] {
    emit(polab::channel_mueller_json(deref(channel),
                                     include_coherent_probes != 0),
         result_json);
  });
}

polab_status polab_qfim(const char* request_json, char** result_json) {
  return guarded([&] {
    emit(polab::run_qfim_request(parse(request_json, "qfim request")),
         result_json);
  });
}

polab_status polab_simulate_gadget(const polab_state* state,
                                   const char* config_json,
                                   char** result_json) {
  return guarded([&] {
    const polab::GadgetConfig cfg =
        polab::gadget_config_from_json(parse(config_json, "gadget config"));
    emit(polab::to_json(polab::simulate_gadget(deref(state), cfg)),
         result_json);
  });
}

polab_status polab_estimate_stokes(const polab_state* state, uint64_t shots,
                                   uint64_t seed, char** result_json) {
  return guarded([&] {
    emit(polab::to_json(polab::estimate_stokes(deref(state), shots, seed)),
         result_json);
  });
}

polab_status polab_run_experiment(const char* name, const char* params_json,
                                  char** result_json) {
  return guarded([&] {
    if (name == nullptr) polab::fail_argument("null experiment name");
    const polab::json params =
        (params_json == nullptr || std::string(params_json).empty())
            ? polab::json::object()
            : parse(params_json, "experiment params");
    emit(polab::to_json(polab::run_experiment(name, params)), result_json);
  });
}

}  // extern "C"
