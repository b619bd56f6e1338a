#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "core/channels.hpp"
#include "core/fock.hpp"

// Polarimeter simulation and the classical-intuition experiment suite.
//
// The simulated instrument rotates the input polarization with waveplates,
// splits the two circular components on a polarizing beam splitter, and
// counts photons on two detectors.  Measuring S1 or S2 means rotating that
// Stokes axis onto S3 first; (n1 - n2)/2 then estimates the rotated S3.

namespace polab {

enum class StokesComponent { s1, s2, s3 };

struct GadgetConfig {
  // Either a named component setting or an explicit rotation.
  bool named = true;
  StokesComponent component = StokesComponent::s3;
  double theta = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();

  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
  // Largest tolerated probability deficit of the truncated count
  // distribution.
  double mass_tolerance = 1e-9;

  static GadgetConfig for_component(StokesComponent c, std::uint64_t shots,
                                    std::uint64_t seed);
};

// Rotation mapping the requested Stokes component onto S3, so the detector
// difference current measures it.
std::pair<double, Eigen::Vector3d> gadget_rotation_for(StokesComponent c);

// Waveplate triple (quarter, half, quarter; fast-axis angles in light
// order) realizing the same rotation.  A convenience readout: the
// simulation itself works with the abstract rotation.
struct RetarderAngles {
  double qwp_in = 0.0;
  double hwp = 0.0;
  double qwp_out = 0.0;
};
RetarderAngles gadget_retarder_angles(StokesComponent c);

// Jones matrix of a single waveplate: retardance delta, fast axis at lab
// angle phi, i.e. a rotation by delta about the equatorial Poincare axis
// (cos 2phi, sin 2phi, 0).
JonesMatrix waveplate_jones(double delta, double phi);

struct CountRecord {
  std::vector<std::pair<int, int>> counts;  // per shot (n1, n2)
  std::uint64_t shots = 0;
  double mean_difference_half = 0.0;  // mean of (n1 - n2)/2
  double var_difference_half = 0.0;   // population variance of (n1 - n2)/2
  double mean_total_half = 0.0;       // mean of (n1 + n2)/2
  double var_total_half = 0.0;
  double distribution_deficit = 0.0;  // probability mass beyond truncation
};

// Samples photon-count pairs from the exact joint distribution
// P(n1, n2) = <n1,n2| R rho R^dag |n1,n2> by inverse-CDF over the finite
// outcome list.
CountRecord simulate_gadget(const FockState& state, const GadgetConfig& config);

struct StokesEstimate {
  StokesVector value;
  std::array<double, 4> standard_error{};
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

// Runs the three component settings (plus the total intensity from the S3
// run) with per-setting substreams of `seed`.
StokesEstimate estimate_stokes(const FockState& state, std::uint64_t shots,
                               std::uint64_t seed);

// --- experiment reports -----------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Flag {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  // "<" value must stay below threshold, ">" above.
  std::string comparison = "<";
};

struct ExperimentReport {
  std::string name;
  std::string inputs_echo;  // canonical JSON of the parameters used
  std::map<std::string, Table> tables;
  std::vector<Flag> flags;

  bool all_passed() const;
};

// Named experiments: "subset-trace", "anisotropy", "decompositions",
// "higher-order", "attenuated-isotropic".  Unknown names fail with an
// argument error.  `params` may override experiment-specific defaults.
ExperimentReport run_experiment(const std::string& name,
                                const nlohmann::json& params);

std::vector<std::string> experiment_names();

}  // namespace polab
