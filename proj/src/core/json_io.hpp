#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "core/channels.hpp"
#include "core/estimation.hpp"
#include "core/experiments.hpp"
#include "core/fock.hpp"
#include "core/mueller.hpp"
#include "core/stokes.hpp"

// JSON encodings for every value type plus byte-stable serialization:
// object keys are emitted sorted and every float is rendered with %.17g,
// so identical values always serialize to identical bytes.

namespace polab {

using json = nlohmann::json;

std::string canonical_dump(const json& j);

// {"type":"stokes","s":[s0,s1,s2,s3]}
json to_json(const StokesVector& s);
StokesVector stokes_from_json(const json& j);

// {"type":"jones_vector","a":[re,im],"b":[re,im]}
json to_json(const JonesVector& v);
JonesVector jones_vector_from_json(const json& j);

// {"type":"coherency","matrix":[[[re,im],[re,im]],[[re,im],[re,im]]]}
json coherency_to_json(const CoherencyMatrix& m);
CoherencyMatrix coherency_from_json(const json& j);

// {"type":"jones","matrix":[[[re,im],[re,im]],[[re,im],[re,im]]]}
json jones_to_json(const JonesMatrix& m);
JonesMatrix jones_from_json(const json& j);

// {"type":"mueller","matrix":[[...]x4]}
json to_json(const MuellerMatrix& m);
MuellerMatrix mueller_from_json(const json& j);

// {"type":"fock_state","n_max":N,"kind":"pure"|"density","entries":[...],
//  "leakage":x}; pure entries {"m","n","re","im"}, density entries
// {"row":[m,n],"col":[m,n],"re","im"}.  Zero entries are omitted.
json to_json(const FockState& state);
FockState fock_state_from_json(const json& j);

// {"type":"kraus_channel","kind":"kraus"|"twirl","n_max":N,"ops":[...],
//  "label":...}; the twirl form carries no operator list.
json to_json(const Channel& channel);
Channel channel_from_json(const json& j);

json to_json(const MuellerValidityReport& report);
json to_json(const StokesValidity& report);
json to_json(const PolarizationDecomposition& d);
json to_json(const QfimResult& result);
json to_json(const RotationFrame& frame);
json to_json(const UncertaintyReport& report);
json to_json(const PerfectPolarizationReport& report);
json to_json(const InducedMuellerResult& result);
json to_json(const Table& table);
json to_json(const ExperimentReport& report);
json to_json(const StokesEstimate& estimate);
json to_json(const CountRecord& record, std::uint64_t max_listed_shots = 10000);

// Dispatch on the "type" tag for round-trip tests and generic file IO.
// Returns the canonical form of the parsed object.
json reencode_tagged(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

// CSV with a header row; numbers in %.17g.
std::string table_to_csv(const Table& table);

}  // namespace polab
