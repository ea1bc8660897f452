#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ea/charge.hpp"
#include "ea/config.hpp"
#include "ea/csv.hpp"
#include "ea/electrostatics.hpp"
#include "ea/errors.hpp"
#include "ea/impedance.hpp"
#include "ea/log.hpp"
#include "ea/surface_energy.hpp"

namespace {

using namespace ea;

RunConfig load_run_config(const std::string& path) {
  if (path.empty()) return RunConfig{};
  return parse_config_file(path);
}

ForceSweepResult run_sweep(const RunConfig& cfg, bool no_leakage, bool serial) {
  SimulationConfig sim = simulation_from(cfg);
  if (no_leakage) sim.include_leakage = false;
  if (serial) sim.parallel = false;
  const RoughnessSpec spec = roughness_from(cfg);
  const DielectricLayer l1 = insulator_from(cfg);
  const DielectricLayer l2 = counter_layer_from(cfg);
  const ElasticPair pair =
      ElasticPair::from_layers(l1, l2, sim.freqs_hz.front());
  ForceSweepResult result =
      force_sweep(sim, spec, pair, l1, l2, gap_from(cfg));
  if (result.points.empty())
    fail(ErrorCode::convergence,
         "all sweep frequencies failed; first failure: " +
             (result.failures.empty() ? std::string("none reported")
                                      : result.failures.front().second));
  return result;
}

int cmd_sweep(const RunConfig& cfg, const std::string& output, bool no_leakage,
              bool serial) {
  const ForceSweepResult result = run_sweep(cfg, no_leakage, serial);
  CsvWriter w;
  w.header({"freq_hz", "pe_pa", "fe_n", "mean_sep_m", "area_ratio",
            "loss_tangent"});
  for (const ForceSweepPoint& p : result.points)
    w.row({p.freq_hz, p.pe_pa, p.fe_n, p.mean_sep_m, p.area_ratio,
           p.loss_tangent});
  w.write_atomic(output);
  log::info("wrote " + output);
  return 0;
}

int cmd_sensitivity(const RunConfig& cfg, const std::string& param,
                    double delta, const std::string& output) {
  const SimulationConfig sim = simulation_from(cfg);
  const std::vector<SensitivityPoint> rows = sensitivity_analysis(
      sim, roughness_from(cfg), insulator_from(cfg), counter_layer_from(cfg),
      gap_from(cfg), sensitivity_param_from_name(param), delta);
  CsvWriter w;
  w.header({"freq_hz", "fe_base_n", "fe_perturbed_n", "change_percent"});
  for (const SensitivityPoint& r : rows)
    w.row({r.freq_hz, r.base_fe_n, r.perturbed_fe_n,
           r.undefined ? std::numeric_limits<double>::quiet_NaN()
                       : r.change_percent});
  w.write_atomic(output);
  log::info("wrote " + output);
  return 0;
}

struct SweepPaths {
  std::string total, skin, screen;
};

ImpedanceSweep load_three(const SweepPaths& paths, ImpedanceSweep* skin,
                          ImpedanceSweep* screen) {
  *skin = load_sweep(paths.skin, SweepCondition::skin);
  *screen = load_sweep(paths.screen, SweepCondition::touchscreen);
  return load_sweep(paths.total, SweepCondition::total_sliding);
}

int cmd_impedance_analyze(const SweepPaths& paths, const std::string& output,
                          double f_min, double area_m2) {
  ImpedanceSweep skin, screen;
  const ImpedanceSweep total = load_three(paths, &skin, &screen);
  const ImpedanceSweep remaining = remaining_impedance(total, skin, screen);
  write_sweep_csv(remaining, output);
  log::info("wrote " + output);

  GapEstimate est = gap_capacitance(remaining, f_min);
  std::printf("c_gap_f = %s\n", format_g9(est.c_gap_f).c_str());
  std::printf("admittance_slope = %s\n",
              format_g9(est.admittance_slope).c_str());
  std::printf("non_capacitive_warning = %s\n",
              est.non_capacitive_warning ? "true" : "false");
  if (est.non_capacitive_warning)
    log::error("remaining impedance does not look capacitive in the fit band");
  if (area_m2 > 0.0) {
    est.a_app_m2 = area_m2;
    est.u_m = gap_thickness(est);
    std::printf("u_m = %s\n", format_g9(est.u_m).c_str());
  }
  try {
    const RemainingModel model = fit_polarization(remaining, est.c_gap_f);
    if (model.polarization_absent)
      std::printf("r_ep_ohm = inf\n");
    else
      std::printf("r_ep_ohm = %s\n", format_g9(model.r_ep_ohm).c_str());
    std::printf("c_ep_f = %s\n", format_g9(model.c_ep_f).c_str());
  } catch (const Error& e) {
    log::info(std::string("polarization fit skipped: ") + e.what());
  }
  return 0;
}

int cmd_impedance_force(const SweepPaths& paths, const std::string& output,
                        double v0, double area_m2, double u_m, double f_min,
                        bool implicit) {
  ImpedanceSweep skin, screen;
  const ImpedanceSweep total = load_three(paths, &skin, &screen);
  const ImpedanceSweep remaining = remaining_impedance(total, skin, screen);

  GapEstimate est = gap_capacitance(remaining, f_min);
  est.a_app_m2 = area_m2;
  if (u_m <= 0.0) u_m = gap_thickness(est);

  RemainingModel model;
  model.c_gap_f = est.c_gap_f;
  try {
    model = fit_polarization(remaining, est.c_gap_f);
  } catch (const Error& e) {
    model.polarization_absent = true;
    model.r_ep_ohm = std::numeric_limits<double>::infinity();
    log::info(std::string("no polarization fit; treating R_EP as absent: ") +
              e.what());
  }

  const std::vector<GapForcePoint> rows = gap_voltage_and_force(
      total, skin, screen, model, v0, area_m2, u_m, implicit);
  CsvWriter w;
  w.header({"freq_hz", "dv_gap_v", "fe_n", "fe_nopol_n"});
  for (const GapForcePoint& r : rows) {
    if (r.implicit_differs)
      log::info("explicit and implicit gap-voltage readings differ at " +
                format_g9(r.freq_hz) + " Hz: " +
                format_g9(std::abs(r.dv_gap_v)) + " vs " +
                format_g9(std::abs(r.dv_gap_implicit_v)));
    w.row({r.freq_hz,
           std::abs(implicit ? r.dv_gap_implicit_v : r.dv_gap_v), r.fe_n,
           r.fe_nopol_n});
  }
  w.write_atomic(output);
  log::info("wrote " + output);
  return 0;
}

int cmd_impedance_metrics(const std::string& total_path,
                          const std::vector<std::string>& part_args,
                          const std::string& output) {
  const ImpedanceSweep total =
      load_sweep(total_path, SweepCondition::total_sliding);
  std::vector<std::pair<std::string, ImpedanceSweep>> parts;
  for (const std::string& arg : part_args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
      fail(ErrorCode::validation,
           "--part expects name=path, got '" + arg + "'");
    parts.emplace_back(arg.substr(0, eq),
                       load_sweep(arg.substr(eq + 1), SweepCondition::skin));
  }
  if (parts.empty()) fail(ErrorCode::validation, "no --part given");

  const std::vector<ContributionRow> rows = contribution_metrics(total, parts);
  CsvWriter w;
  w.header({"freq_hz", "part", "mr", "pps"});
  for (const ContributionRow& r : rows)
    w.row_raw({format_g9(r.freq_hz), r.part, format_g9(r.mr),
               r.pps_undefined
                   ? format_g9(std::numeric_limits<double>::quiet_NaN())
                   : format_g9(r.pps)});
  w.write_atomic(output);
  log::info("wrote " + output);
  return 0;
}

int cmd_friction(const std::string& input, const std::string& output,
                 double mu_off, double mu_on, double fn) {
  if (input.empty()) {
    const double fe = friction_inferred_force(mu_off, mu_on, fn);
    if (fe < 0.0)
      log::error("inferred force is negative; friction data look inconsistent");
    std::printf("fe_n = %s\n", format_g9(fe).c_str());
    return 0;
  }
  const NumericTable t = read_numeric_csv(input, {"mu_off", "mu_on", "fn_n"});
  CsvWriter w;
  w.header({"mu_off", "mu_on", "fn_n", "fe_n"});
  for (const auto& row : t.rows) {
    const double fe = friction_inferred_force(row[0], row[1], row[2]);
    if (fe < 0.0)
      log::error("negative inferred force for mu_off=" + format_g9(row[0]) +
                 ", mu_on=" + format_g9(row[1]));
    w.row({row[0], row[1], row[2], fe});
  }
  w.write_atomic(output);
  log::info("wrote " + output);
  return 0;
}

int cmd_surface_energy(const std::string& liquids_path,
                       const std::string& angles_path,
                       const std::string& only_sample,
                       const std::string& output) {
  const std::vector<ProbeLiquid> liquids = load_probe_liquids(liquids_path);
  const std::vector<AngleRecord> angles = load_contact_angles(angles_path);

  std::vector<std::string> samples;  // first-appearance order
  for (const AngleRecord& a : angles)
    if (std::find(samples.begin(), samples.end(), a.sample) == samples.end())
      samples.push_back(a.sample);
  if (!only_sample.empty()) {
    if (std::find(samples.begin(), samples.end(), only_sample) ==
        samples.end())
      fail(ErrorCode::validation,
           "sample '" + only_sample + "' not present in " + angles_path);
    samples = {only_sample};
  }

  CsvWriter w;
  w.header({"sample", "gamma_lw", "gamma_plus", "gamma_minus", "gamma_total",
            "residual"});
  for (const std::string& sample : samples) {
    // replicate angles for the same liquid are averaged before the solve
    std::vector<std::string> order;
    std::map<std::string, std::pair<double, int>> sums;
    for (const AngleRecord& a : angles) {
      if (a.sample != sample) continue;
      if (!sums.count(a.liquid)) order.push_back(a.liquid);
      auto& acc = sums[a.liquid];
      acc.first += a.theta_deg;
      acc.second += 1;
    }
    std::vector<ProbeLiquid> used;
    std::vector<double> theta;
    for (const std::string& name : order) {
      const auto it =
          std::find_if(liquids.begin(), liquids.end(),
                       [&](const ProbeLiquid& l) { return l.name == name; });
      if (it == liquids.end())
        fail(ErrorCode::validation, "angle row references unknown liquid '" +
                                        name + "'");
      used.push_back(*it);
      theta.push_back(sums[name].first / sums[name].second);
    }
    const SurfaceEnergyResult res = solve_components(used, theta);
    if (res.all_obtuse_warning)
      log::error("sample '" + sample +
                 "': every probe angle is obtuse; components are weakly "
                 "constrained");
    w.row_raw({sample, format_g9(res.gamma_lw), format_g9(res.gamma_plus),
               format_g9(res.gamma_minus), format_g9(res.gamma_total),
               format_g9(res.residual_mj_m2)});
  }
  w.write_atomic(output);
  log::info("wrote " + output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"electroadhesion modeling toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "run configuration file");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "electrostatic force vs frequency (self-consistent load)");
  std::string sweep_out = "sweep.csv";
  bool no_leakage = false, serial = false;
  sweep->add_option("--output", sweep_out, "output CSV path");
  sweep->add_flag("--no-leakage", no_leakage, "disable charge leakage");
  sweep->add_flag("--serial", serial, "force single-threaded evaluation");

  // sensitivity
  auto* sens = app.add_subcommand("sensitivity",
                                  "percent force change under one perturbed "
                                  "parameter");
  std::string sens_param, sens_out = "sensitivity.csv";
  double sens_delta = 0.0;
  sens->add_option("--param", sens_param, "one of d1, d2, eps1, Y2")
      ->required();
  sens->add_option("--delta", sens_delta, "fractional change, e.g. -0.5")
      ->required();
  sens->add_option("--output", sens_out, "output CSV path");

  // impedance group
  auto* imp = app.add_subcommand("impedance", "measured-sweep pipeline");
  imp->require_subcommand(1);
  SweepPaths paths;
  auto add_paths = [&paths](CLI::App* cmd) {
    cmd->add_option("--total", paths.total, "total sliding sweep CSV")
        ->required();
    cmd->add_option("--skin", paths.skin, "skin sweep CSV")->required();
    cmd->add_option("--screen", paths.screen, "touchscreen sweep CSV")
        ->required();
  };

  auto* analyze = imp->add_subcommand(
      "analyze", "remaining impedance, gap capacitance and thickness");
  std::string analyze_out = "remaining.csv";
  double f_min = 30.0, analyze_area = 0.0;
  add_paths(analyze);
  analyze->add_option("--output", analyze_out, "remaining-sweep CSV path");
  analyze->add_option("--fmin", f_min, "capacitive band lower edge, Hz");
  analyze->add_option("--area", analyze_area,
                      "apparent contact area in m^2 (enables thickness)");

  auto* force = imp->add_subcommand("force",
                                    "gap voltage and electrostatic force");
  std::string force_out = "gap_force.csv";
  double force_v0 = 75.0, force_area = 130e-6, force_u = 0.0;
  bool force_implicit = false;
  add_paths(force);
  force->add_option("--output", force_out, "force CSV path");
  force->add_option("--v0", force_v0, "drive amplitude, volts");
  force->add_option("--area", force_area, "apparent contact area, m^2");
  force->add_option("--u", force_u,
                    "gap thickness in m (derived from C_gap when omitted)");
  force->add_flag("--implicit", force_implicit,
                  "use the implicit gap-voltage reading");

  auto* metrics = imp->add_subcommand("metrics",
                                      "per-part magnitude ratio and phase "
                                      "synchronization");
  std::string metrics_total, metrics_out = "metrics.csv";
  std::vector<std::string> metrics_parts;
  metrics->add_option("--total", metrics_total, "total sliding sweep CSV")
      ->required();
  metrics->add_option("--part", metrics_parts, "component as name=path")
      ->required();
  metrics->add_option("--output", metrics_out, "metrics CSV path");

  // friction group
  auto* friction = app.add_subcommand("friction", "friction-derived force");
  friction->require_subcommand(1);
  auto* infer = friction->add_subcommand(
      "infer", "electrostatic force from on/off friction coefficients");
  std::string fr_in, fr_out = "friction_force.csv";
  double mu_off = 0.0, mu_on = 0.0, fn = 0.0;
  infer->add_option("--input", fr_in, "CSV of mu_off,mu_on,fn_n rows");
  infer->add_option("--output", fr_out, "output CSV path (with --input)");
  infer->add_option("--mu-off", mu_off, "voltage-off friction coefficient");
  infer->add_option("--mu-on", mu_on, "voltage-on friction coefficient");
  infer->add_option("--fn", fn, "normal force, N");

  // surface energy
  auto* senergy = app.add_subcommand(
      "surface-energy", "acid-base components from contact angles");
  std::string liquids_path, angles_path, se_sample, se_out = "surface_energy.csv";
  senergy->add_option("--liquids", liquids_path, "probe liquid table CSV")
      ->required();
  senergy->add_option("--angles", angles_path, "contact angle CSV")->required();
  senergy->add_option("--sample", se_sample, "restrict to one sample");
  senergy->add_option("--output", se_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sweep->parsed())
      return cmd_sweep(load_run_config(config_path), sweep_out, no_leakage,
                       serial);
    if (sens->parsed())
      return cmd_sensitivity(load_run_config(config_path), sens_param,
                             sens_delta, sens_out);
    if (analyze->parsed())
      return cmd_impedance_analyze(paths, analyze_out, f_min, analyze_area);
    if (force->parsed())
      return cmd_impedance_force(paths, force_out, force_v0, force_area,
                                 force_u, f_min, force_implicit);
    if (metrics->parsed())
      return cmd_impedance_metrics(metrics_total, metrics_parts, metrics_out);
    if (infer->parsed()) {
      if (fr_in.empty() && !(mu_on > 0.0))
        ea::fail(ea::ErrorCode::validation,
                 "friction infer needs --input or --mu-off/--mu-on/--fn");
      return cmd_friction(fr_in, fr_out, mu_off, mu_on, fn);
    }
    if (senergy->parsed())
      return cmd_surface_energy(liquids_path, angles_path, se_sample, se_out);
  } catch (const ea::Error& e) {
    std::fprintf(stderr, "error: %s: %s\n", e.code_name(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 1;
  }
  return 0;
}
