#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ea/charge.hpp"
#include "ea/constants.hpp"
#include "ea/materials.hpp"
#include "ea/persson.hpp"

namespace ea {

struct SimulationConfig {
  double v0 = 75.0;
  std::vector<double> freqs_hz;
  double p0_pa = 5e3;        // externally applied squeezing pressure
  double a0_m2 = 1e-4;       // apparent contact area
  double cutoff_m = leak_cutoff_m;
  double damping = 0.5;      // fixed-point relaxation factor, (0, 1]
  double rel_tol = 1e-6;
  int max_iterations = 200;
  bool include_leakage = true;
  // false drops the interface-charge terms (and with them the leak) from the
  // gap field, leaving the bare capacitive-divider response
  bool include_polarization = true;
  bool parallel = true;
};

// Everything the gap-field envelope needs, frozen at the mean separation:
// phasor charges, phasor leak current, and the geometric factors of the
// three-layer field split. Only the explicit u-dependence is re-evaluated
// across the separation distribution.
struct GapFieldModel {
  std::complex<double> v{0.0, 0.0};
  std::complex<double> rho1{0.0, 0.0};
  std::complex<double> rho2{0.0, 0.0};
  std::complex<double> leak_current{0.0, 0.0};  // A/m^2
  double r1_m2_per_f = 0.0;   // d1/eps1
  double r2_m2_per_f = 0.0;   // d2/eps2
  double eps_gap_f_per_m = 0.0;
  double alpha_s_per_m2 = 0.0;
  double cutoff_m = leak_cutoff_m;
  bool include_leakage = true;
  bool include_polarization = true;

  // |E_gap(u)| minus the leak reduction, floored at zero: the conductive
  // bridges can neutralize the gap field but never drive it past reversal.
  double envelope_at(double u_m) const;
};

GapFieldModel make_gap_field_model(const InterfaceStack& stack_at_mean_gap,
                                   const ChargePhasors& charges,
                                   std::complex<double> leak_current_a_per_m2,
                                   double alpha_s_per_m2,
                                   const SimulationConfig& cfg);

// (1/2) eps0 Int P(u) E(u)^2 du over the separation distribution.
double electrostatic_pressure(const SeparationDistribution& dist,
                              const GapFieldModel& model, bool parallel = true);

struct LoadResult {
  double p_pa = 0.0;    // converged total squeezing pressure
  double pe_pa = 0.0;   // electrostatic share at that load
  SeparationDistribution dist;
  int iterations = 0;
};

// Damped fixed point of p = p0 + p_e(p): the attractive pressure squeezes the
// surfaces closer, which in turn strengthens the field.
LoadResult self_consistent_load(const SimulationConfig& cfg,
                                const PerssonKernel& kernel,
                                const ElasticPair& pair,
                                const InterfaceStack& proto);
LoadResult self_consistent_load(const SimulationConfig& cfg,
                                const RoughnessSpec& spec,
                                const ElasticPair& pair,
                                const InterfaceStack& proto);

struct ForceSweepPoint {
  double freq_hz = 0.0;
  double pe_pa = 0.0;
  double fe_n = 0.0;
  double mean_sep_m = 0.0;
  double area_ratio = 0.0;
  double loss_tangent = 0.0;  // of the counter-surface dielectric
};

struct ForceSweepResult {
  std::vector<ForceSweepPoint> points;  // successes, in input order
  std::vector<std::pair<double, std::string>> failures;  // (freq, reason)
};

ForceSweepResult force_sweep(const SimulationConfig& cfg,
                             const RoughnessSpec& spec,
                             const ElasticPair& pair,
                             const DielectricLayer& layer1,
                             const DielectricLayer& layer2,
                             const GapMedium& gap = {});

enum class SensitivityParam { d1, d2, eps1, y2 };

SensitivityParam sensitivity_param_from_name(const std::string& name);
const char* sensitivity_param_name(SensitivityParam p);

struct SensitivityPoint {
  double freq_hz = 0.0;
  double base_fe_n = 0.0;
  double perturbed_fe_n = 0.0;
  double change_percent = 0.0;
  bool undefined = false;  // base force was zero
};

// Reruns the sweep with one parameter scaled by (1 + delta) and reports the
// per-frequency percent change in force.
std::vector<SensitivityPoint> sensitivity_analysis(
    const SimulationConfig& cfg, const RoughnessSpec& spec,
    const DielectricLayer& layer1, const DielectricLayer& layer2,
    const GapMedium& gap, SensitivityParam param, double delta);

// F_e = (1 - mu_off/mu_on) F_n: the extra normal load needed to explain the
// friction rise when the voltage is on. Negative results are legal (noisy
// friction data) and left unclamped.
double friction_inferred_force(double mu_off, double mu_on, double fn_n);

}  // namespace ea
