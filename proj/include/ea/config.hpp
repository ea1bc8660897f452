#pragma once

#include <string>
#include <vector>

#include "ea/electrostatics.hpp"
#include "ea/materials.hpp"
#include "ea/persson.hpp"

namespace ea {

// Flat key = value run configuration. Defaults describe the reference
// SiO2-coated touchscreen against a fingerpad.
struct RunConfig {
  double d1_m = 1e-6;        // insulator film thickness
  double d2_m = 200e-6;      // counter-layer (stratum corneum) thickness
  double eps1_r = 3.9;       // insulator relative permittivity
  double sigma1 = 1e-13;     // insulator conductivity, S/m
  double sigma_air = 1e-14;  // gap conductivity, S/m
  double y1_pa = 7e10;
  double y2_pa = 1e7;
  double nu1 = 0.15;
  double nu2 = 0.5;
  double h_rms_m = 22e-6;
  double hurst = 0.86;
  double q_l = 9e2;
  double q_0 = 8e3;
  double q_1 = 1e10;
  double p0_pa = 5e3;
  double a0_m2 = 1e-4;
  double v0_v = 75.0;
  std::vector<double> freqs_hz = {1.0,   10.0,  50.0,  100.0, 250.0,
                                  500.0, 1e3,   1e4,   1e5,   1e6};
  std::string sc_dispersion_csv;  // frequency-dependent counter-layer table
  double damping = 0.5;
  double rel_tol = 1e-6;
  int max_iterations = 200;
  bool include_leakage = true;
  bool parallel = true;
};

RunConfig parse_config_text(const std::string& text,
                            const std::string& source_name);
RunConfig parse_config_file(const std::string& path);

// Assembled model inputs.
RoughnessSpec roughness_from(const RunConfig& cfg);
GapMedium gap_from(const RunConfig& cfg);
DielectricLayer insulator_from(const RunConfig& cfg);
// Counter layer with dispersion loaded from cfg.sc_dispersion_csv; errors if
// the path is empty or unreadable.
DielectricLayer counter_layer_from(const RunConfig& cfg);
SimulationConfig simulation_from(const RunConfig& cfg);

}  // namespace ea
