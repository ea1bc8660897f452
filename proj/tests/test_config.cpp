#include <doctest.h>

#include <string>
#include <vector>

#include "ea/config.hpp"
#include "ea/errors.hpp"

using namespace ea;

TEST_CASE("defaults describe the reference glass-on-finger setup") {
  const RunConfig c;
  CHECK(c.d1_m == 1e-6);
  CHECK(c.d2_m == 200e-6);
  CHECK(c.eps1_r == 3.9);
  CHECK(c.sigma1 == 1e-13);
  CHECK(c.sigma_air == 1e-14);
  CHECK(c.y1_pa == 7e10);
  CHECK(c.y2_pa == 1e7);
  CHECK(c.nu1 == 0.15);
  CHECK(c.nu2 == 0.5);
  CHECK(c.h_rms_m == 22e-6);
  CHECK(c.hurst == 0.86);
  CHECK(c.q_l == 9e2);
  CHECK(c.q_0 == 8e3);
  CHECK(c.q_1 == 1e10);
  CHECK(c.p0_pa == 5e3);
  CHECK(c.a0_m2 == 1e-4);
  CHECK(c.v0_v == 75.0);
  CHECK(c.freqs_hz.size() == 10);
  CHECK(c.freqs_hz.front() == 1.0);
  CHECK(c.freqs_hz.back() == 1e6);
  CHECK(c.damping == 0.5);
  CHECK(c.rel_tol == 1e-6);
  CHECK(c.max_iterations == 200);
  CHECK(c.include_leakage);
  CHECK(c.parallel);
}

TEST_CASE("flat key=value parsing with comments") {
  const RunConfig c = parse_config_text(
      "# leading comment\n"
      "d1_m = 2e-6\r\n"
      "V0_v=100  # trailing comment\n"
      "\n"
      "freqs_hz = 1, 10 ,1e3\n"
      "include_leakage = off\n"
      "parallel = true\n"
      "max_iterations = 50\n",
      "inline");
  CHECK(c.d1_m == 2e-6);
  CHECK(c.v0_v == 100.0);
  CHECK(c.freqs_hz == std::vector<double>{1.0, 10.0, 1e3});
  CHECK_FALSE(c.include_leakage);
  CHECK(c.parallel);
  CHECK(c.max_iterations == 50);
}

TEST_CASE("unknown keys fail with a spelling hint") {
  try {
    parse_config_text("d1_mm = 2e-6\n", "inline");
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config);
    CHECK(std::string(e.what()).find("d1_m") != std::string::npos);
  }
}

TEST_CASE("malformed configuration lines are rejected") {
  CHECK_THROWS_AS(parse_config_text("d1_m = 1e-6\nd1_m = 2e-6\n", "x"), Error);
  CHECK_THROWS_AS(parse_config_text("d1_m : 1e-6\n", "x"), Error);
  CHECK_THROWS_AS(parse_config_text("d1_m = banana\n", "x"), Error);
  CHECK_THROWS_AS(parse_config_text("include_leakage = maybe\n", "x"), Error);
  CHECK_THROWS_AS(parse_config_text("max_iterations = 2.5\n", "x"), Error);
  CHECK_THROWS_AS(parse_config_text("= 5\n", "x"), Error);
  CHECK_THROWS_AS(parse_config_file("/tmp/ea_no_such_config.cfg"), Error);
}

TEST_CASE("builders assemble the model inputs") {
  RunConfig c;
  const RoughnessSpec spec = roughness_from(c);
  CHECK(spec.h_rms_m == c.h_rms_m);
  CHECK(spec.hurst == c.hurst);
  CHECK(spec.q_l == c.q_l);
  CHECK(spec.q_0 == c.q_0);
  CHECK(spec.q_1 == c.q_1);

  const GapMedium gap = gap_from(c);
  CHECK(gap.conductivity_s_per_m == c.sigma_air);
  CHECK(gap.rel_permittivity == 1.00059);

  const DielectricLayer ins = insulator_from(c);
  CHECK(ins.thickness_m == c.d1_m);
  CHECK(ins.rel_permittivity.at(123.0) == c.eps1_r);
  CHECK(ins.conductivity_s_per_m.at(123.0) == c.sigma1);
  CHECK(ins.elastic_modulus_pa == c.y1_pa);
  CHECK(ins.poisson == c.nu1);

  const SimulationConfig sim = simulation_from(c);
  CHECK(sim.v0 == c.v0_v);
  CHECK(sim.freqs_hz == c.freqs_hz);
  CHECK(sim.p0_pa == c.p0_pa);
  CHECK(sim.a0_m2 == c.a0_m2);
  CHECK(sim.damping == c.damping);
  CHECK(sim.include_leakage == c.include_leakage);

  // the counter layer needs a dispersion table
  CHECK_THROWS_AS(counter_layer_from(c), Error);
  c.sc_dispersion_csv = std::string(EA_DATA_DIR) + "/sc_dispersion_placeholder.csv";
  const DielectricLayer sc = counter_layer_from(c);
  CHECK(sc.thickness_m == c.d2_m);
  CHECK(sc.elastic_modulus_pa == c.y2_pa);
  CHECK(sc.rel_permittivity.at(0.5) > sc.rel_permittivity.at(2e6));
  CHECK(sc.conductivity_s_per_m.at(0.5) < sc.conductivity_s_per_m.at(2e6));
}
