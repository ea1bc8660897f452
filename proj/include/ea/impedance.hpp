#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ea/constants.hpp"

namespace ea {

enum class SweepCondition { skin, touchscreen, total_sliding, total_stationary };
enum class DcOffset { none, positive_dc, negative_dc };

SweepCondition sweep_condition_from_name(const std::string& name);
DcOffset dc_offset_from_name(const std::string& name);

struct ImpedanceSweep {
  std::vector<double> freq_hz;              // strictly increasing
  std::vector<std::complex<double>> z_ohm;  // one record per frequency
  SweepCondition condition = SweepCondition::total_sliding;
  DcOffset offset = DcOffset::none;
  double area_m2 = 0.0;  // 0 = not recorded

  std::size_t size() const { return freq_hz.size(); }
};

// Programmatic construction with the structural invariants checked.
ImpedanceSweep make_sweep(std::vector<double> freq_hz,
                          std::vector<std::complex<double>> z_ohm,
                          SweepCondition condition = SweepCondition::total_sliding,
                          DcOffset offset = DcOffset::none);

// CSV schema: freq_hz,z_real_ohm,z_imag_ohm (header mandatory).
ImpedanceSweep load_sweep(const std::string& path, SweepCondition condition,
                          DcOffset offset = DcOffset::none);
void write_sweep_csv(const ImpedanceSweep& sweep, const std::string& path);

// Linear interpolation of the real and imaginary parts separately, in log
// frequency. Queries outside the sweep's range throw a range error.
ImpedanceSweep resample_to(const ImpedanceSweep& sweep,
                           const std::vector<double>& grid_hz);

// The common frequency grid of several sweeps: the first sweep's points
// restricted to the intersection of all ranges.
std::vector<double> common_grid(const std::vector<const ImpedanceSweep*>& sweeps);

// Z_R = Z_total - Z_skin - Z_screen on the aligned grid.
ImpedanceSweep remaining_impedance(const ImpedanceSweep& total,
                                   const ImpedanceSweep& skin,
                                   const ImpedanceSweep& screen);

struct GapEstimate {
  double c_gap_f = 0.0;
  double u_m = 0.0;       // filled by gap_thickness
  double a_app_m2 = 0.0;  // filled by the caller before gap_thickness
  double eps_gap = air_rel_permittivity;
  double admittance_slope = 0.0;  // log-log slope over the capacitive band
  bool non_capacitive_warning = false;
};

// Median of C(f) = |Y(f)|/omega over [f_min, min(f_max, 100 kHz)], where the
// remaining branch should be a bare capacitor. A log-log admittance slope far
// from one decade/decade flags a non-capacitive sweep.
GapEstimate gap_capacitance(const ImpedanceSweep& remaining,
                            double f_min_hz = 30.0);

// u = eps0 eps_gap A_app / C_gap.
double gap_thickness(const GapEstimate& est);

struct RemainingModel {
  double r_ep_ohm = 0.0;
  double c_ep_f = 0.0;
  double c_gap_f = 0.0;
  bool polarization_absent = false;  // no resistive leg resolvable; R_EP -> inf
};

// Fits Y_R(w) = 1/R_EP + jw (C_EP + C_gap) on the band below f_corner with
// C_gap held fixed; both fitted parameters are clamped nonnegative.
RemainingModel fit_polarization(const ImpedanceSweep& remaining, double c_gap_f,
                                double f_corner_hz = 30.0);

struct GapForcePoint {
  double freq_hz = 0.0;
  std::complex<double> dv_v{0.0, 0.0};      // gap-branch voltage, no polarization
  std::complex<double> dv_gap_v{0.0, 0.0};  // after the polarization correction
  std::complex<double> dv_gap_implicit_v{0.0, 0.0};
  double fe_n = 0.0;        // from |dv_gap|
  double fe_nopol_n = 0.0;  // from |dv|
  bool implicit_differs = false;  // explicit/implicit readings apart by > 0.1%
};

// Node analysis of the measurement chain: the drive divides over touchscreen,
// gap branch, and skin; the polarization resistance then eats part of the gap
// branch's share. The correction term can be read with the capacitive
// currents driven by the branch voltage (explicit, default) or by the gap
// voltage itself (implicit closed form); use_implicit selects which one the
// force is computed from.
std::vector<GapForcePoint> gap_voltage_and_force(
    const ImpedanceSweep& total, const ImpedanceSweep& skin,
    const ImpedanceSweep& screen, const RemainingModel& model, double v0,
    double a_app_m2, double u_m, bool use_implicit = false);

struct ContributionRow {
  double freq_hz = 0.0;
  std::string part;
  double mr = 0.0;   // |Z_part| / |Z_total|
  double pps = 0.0;  // percent phase synchronization
  bool pps_undefined = false;  // total phase was zero
};

std::vector<ContributionRow> contribution_metrics(
    const ImpedanceSweep& total,
    const std::vector<std::pair<std::string, ImpedanceSweep>>& parts);

// Multiplies both impedance components by from_area/to_area.
ImpedanceSweep normalize_by_area(const ImpedanceSweep& sweep, double from_area_m2,
                                 double to_area_m2);

}  // namespace ea
