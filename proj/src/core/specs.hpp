#pragma once

#include <string>

#include "core/json_io.hpp"

// Short textual specs for states and channels ("name:key=value,...") plus
// the JSON report assemblers shared by the C interface and the command-line
// tool.

namespace polab {

// "su2:n=4,theta=0.3,phi=0", "noon:n=4", "tetrahedron", "fock:m=1,n=1",
// "coherent:alpha=2,theta=0,phi=0", "tmsv:zeta=0.88,phase=0",
// "isotropic:mean=1.5", "isotropic:layer=4",
// "noon_inspired:m=2,n=3,theta=0,phi=0", "vacuum".
FockState make_state_from_spec(const std::string& spec, int n_max,
                               double leakage_threshold = kLeakageThreshold);

// "attenuation:q=0.9,mode=a", "diattenuation:q=0.64,r=0.25[,nx=..,ny=..,nz=..]",
// "rotation:theta=1.2[,nx=..,ny=..,nz=..]", "depolarizer",
// "lossless_polarizer:theta=0,phi=0", "kerr:chi=0.3",
// "two_rotation_depolarizer[:nx=..,ny=..,nz=..]".
Channel make_channel_from_spec(const std::string& spec, int n_max);

// Full classical analysis of {"type":"stokes"|"jones_vector"|"coherency"}.
json stokes_analysis_json(const json& input, double tol);

// Mueller factor extraction for {"type":"mueller"}; scale/polar factors
// for {"type":"jones"}.
json decompose_json(const json& input, double tol);

// {"type":"jones"} or {"type":"jones_mixture","weights":[..],"matrices":[..]}.
MuellerMatrix mueller_from_jones_json(const json& input);

json state_info_json(const FockState& state, double tol);
json state_stars_json(const FockState& state);

json channel_mueller_json(const Channel& channel, bool include_coherent_probes);

// {"scenario":"phase"|"loss"|"diattenuation"|"rotation"|"phase-loss",
//  "state":"<spec>", "n_max":N, "q":..., "r":..., "theta":...,
//  "parametrization":"axis_angle"|"euler_zyz"}.
json run_qfim_request(const json& request);

// {"setting":"S1"|"S2"|"S3"} or {"theta":..,"axis":[x,y,z]}, "shots", "seed".
GadgetConfig gadget_config_from_json(const json& config);

}  // namespace polab
