#include "core/specs.hpp"

#include <doctest.h>

#include "core/majorana.hpp"
#include "test_helpers.hpp"

using namespace polab;
using namespace polab::testing;

TEST_CASE("state specs cover every constructor") {
  CHECK(make_state_from_spec("vacuum", 4).trace_norm() == doctest::Approx(1.0));
  CHECK(stokes_vector(make_state_from_spec("fock:m=2,n=1", 4)).s3 ==
        doctest::Approx(0.5));
  CHECK(dop(make_state_from_spec("su2:n=3,theta=1.0,phi=0.4", 4)) ==
        doctest::Approx(1.0));
  CHECK(dop(make_state_from_spec("noon:n=4", 4)) == doctest::Approx(0.0));
  CHECK(majorana_stars(make_state_from_spec("tetrahedron", 4)).size() == 4);
  CHECK(make_state_from_spec("coherent:alpha=1,theta=0.5,phi=0", 16, 1e-6)
            .leakage() < 1e-6);
  CHECK(make_state_from_spec("tmsv:zeta=0.4,phase=0.3", 16, 1e-6).is_pure());
  CHECK_FALSE(make_state_from_spec("isotropic:mean=0.8", 12, 1e-3).is_pure());
  CHECK(make_state_from_spec("isotropic:layer=3", 4).trace_norm() ==
        doctest::Approx(1.0));
  CHECK(moments(make_state_from_spec("noon_inspired:m=2,n=3,theta=0.3,phi=1",
                                     5))
            .mean.norm() < 1e-12);

  CHECK_THROWS_AS(make_state_from_spec("su2", 4), Error);        // missing n
  CHECK_THROWS_AS(make_state_from_spec("su2:n=x", 4), Error);    // not a number
  CHECK_THROWS_AS(make_state_from_spec("su2:n", 4), Error);      // no value
  CHECK_THROWS_AS(make_state_from_spec("warp:n=1", 4), Error);   // unknown
  CHECK_THROWS_AS(make_state_from_spec("isotropic:layer=9", 4), Error);
}

TEST_CASE("channel specs cover every family") {
  const int n_max = 4;
  for (const char* spec :
       {"attenuation:q=0.7,mode=a", "attenuation:q=0.7,mode=b",
        "diattenuation:q=0.8,r=0.2", "diattenuation:q=0.8,r=0.2,nx=1",
        "rotation:theta=0.6,ny=1", "depolarizer", "two_rotation_depolarizer",
        "lossless_polarizer:theta=0.4,phi=0.2", "kerr:chi=0.5"}) {
    const Channel channel = make_channel_from_spec(spec, n_max);
    CHECK(channel.completeness_defect() < 1e-12);
  }
  CHECK_THROWS_AS(make_channel_from_spec("attenuation:q=0.5,mode=c", 4), Error);
  CHECK_THROWS_AS(make_channel_from_spec("squeeze:r=1", 4), Error);
  CHECK_THROWS_AS(make_channel_from_spec("rotation:theta=1,nx=0,ny=0,nz=0", 4),
                  Error);
}

TEST_CASE("classical analysis accepts all three encodings") {
  const json from_stokes = stokes_analysis_json(
      json{{"type", "stokes"}, {"s", {1.0, 0.6, 0.0, 0.8}}}, 1e-10);
  CHECK(from_stokes["degree_of_polarization"].get<double>() ==
        doctest::Approx(1.0));
  CHECK(from_stokes["validity"]["boundary"].get<bool>());

  const json from_jones = stokes_analysis_json(
      to_json(JonesVector{1.0, 0.0}), 1e-10);
  CHECK(from_jones["stokes"]["s"][3].get<double>() == doctest::Approx(0.5));

  CoherencyMatrix psi = CoherencyMatrix::Identity();
  const json from_coherency =
      stokes_analysis_json(coherency_to_json(psi), 1e-10);
  CHECK(from_coherency["degree_of_polarization"].get<double>() ==
        doctest::Approx(0.0));
  CHECK_FALSE(from_coherency["decomposition"]["direction_defined"].get<bool>());

  // Invalid but parseable input still reports, with validity flagged.
  const json invalid = stokes_analysis_json(
      json{{"type", "stokes"}, {"s", {1.0, 1.0, 1.0, 1.0}}}, 1e-10);
  CHECK_FALSE(invalid["validity"]["valid"].get<bool>());
  CHECK_FALSE(invalid.contains("degree_of_polarization"));
}

TEST_CASE("decompose reports reconstruct their input") {
  const MuellerMatrix m =
      mueller_rotation(0.8, Eigen::Vector3d::UnitX()) *
      mueller_diattenuation(0.9, 0.5, Eigen::Vector3d::UnitZ());
  const json report = decompose_json(to_json(m), 1e-10);
  CHECK(report["q"].get<double>() == doctest::Approx(0.9).epsilon(1e-8));
  CHECK(report["r"].get<double>() == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(report["reconstruction_error"].get<double>() < 1e-10);

  const json jones_report =
      decompose_json(jones_to_json(jones_boost(0.7, Eigen::Vector3d::UnitY())),
                     1e-10);
  CHECK(jones_report["scale_factor"].get<double>() == doctest::Approx(1.0));
  CHECK(jones_report["boost_eta"].get<double>() == doctest::Approx(0.7));
}

TEST_CASE("qfim requests run every scenario") {
  const json phase = run_qfim_request(json{
      {"scenario", "phase"}, {"state", "noon:n=2"}, {"n_max", 4}});
  CHECK(phase["qfim"][0][0].get<double>() == doctest::Approx(4.0));

  const json loss = run_qfim_request(json{{"scenario", "loss"},
                                          {"state", "fock:m=4,n=0"},
                                          {"n_max", 4},
                                          {"q", 0.5}});
  CHECK(loss["qfim"][0][0].get<double>() == doctest::Approx(16.0).epsilon(1e-6));

  const json diatten = run_qfim_request(json{{"scenario", "diattenuation"},
                                             {"state", "fock:m=2,n=2"},
                                             {"n_max", 4},
                                             {"q", 0.8},
                                             {"r", 0.7}});
  CHECK(diatten["qfim"][0][0].get<double>() ==
        doctest::Approx(2.0 / (0.8 * 0.2)).epsilon(1e-6));

  const json combined = run_qfim_request(json{{"scenario", "phase-loss"},
                                              {"state", "noon:n=3"},
                                              {"n_max", 4},
                                              {"theta", 0.2},
                                              {"q", 0.9}});
  CHECK(combined["qfim"].size() == 2);

  const json rotation = run_qfim_request(
      json{{"scenario", "rotation"}, {"state", "noon:n=4"}, {"n_max", 4},
           {"parametrization", "euler_zyz"},
           {"theta", {0.1, 0.2, 0.3}}});
  CHECK(rotation["covariance_invertible"].get<bool>());

  CHECK_THROWS_AS(run_qfim_request(json{{"scenario", "phase"}}), Error);
}

TEST_CASE("gadget configuration parsing") {
  const GadgetConfig named = gadget_config_from_json(
      json{{"setting", "S2"}, {"shots", 10}, {"seed", 3}});
  CHECK(named.named);
  CHECK(named.component == StokesComponent::s2);
  CHECK(named.shots == 10);

  const GadgetConfig custom = gadget_config_from_json(
      json{{"theta", 0.5}, {"axis", {0.0, 0.0, 2.0}}, {"shots", 5}});
  CHECK_FALSE(custom.named);
  CHECK(custom.axis[2] == doctest::Approx(1.0));  // normalized

  CHECK_THROWS_AS(gadget_config_from_json(json{{"shots", 5}}), Error);
  CHECK_THROWS_AS(
      gadget_config_from_json(json{{"setting", "S9"}, {"shots", 1}}), Error);
}
