#include "ea/electrostatics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "ea/csv.hpp"
#include "ea/errors.hpp"
#include "ea/log.hpp"
#include "ea/quadrature.hpp"

namespace ea {

namespace {

void check_cfg(const SimulationConfig& cfg) {
  if (cfg.v0 < 0.0) fail(ErrorCode::domain, "config: V0 must be >= 0");
  if (!(cfg.p0_pa > 0.0)) fail(ErrorCode::domain, "config: p0 must be > 0");
  if (!(cfg.a0_m2 > 0.0)) fail(ErrorCode::domain, "config: A0 must be > 0");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
    fail(ErrorCode::domain, "config: damping must lie in (0, 1]");
  if (!(cfg.rel_tol > 0.0) || cfg.max_iterations < 1)
    fail(ErrorCode::domain, "config: bad tolerance or iteration limit");
}

// charges and leak current at the distribution's mean separation
GapFieldModel model_at_mean_gap(const SimulationConfig& cfg,
                                const ElasticPair& pair,
                                const InterfaceStack& proto, double mean_gap_m,
                                double p_pa, double l0_m) {
  InterfaceStack stack = proto;
  stack.gap_m = mean_gap_m;

  ChargePhasors charges;
  if (stack.omega_rad_s > 0.0) {
    charges = steady_state_ac_envelope(stack);
  } else {
    const ChargePair dc = steady_state_dc(stack);
    charges.rho1 = {dc.rho1_c_per_m2, 0.0};
    charges.rho2 = {dc.rho2_c_per_m2, 0.0};
    charges.rho1_envelope = std::abs(dc.rho1_c_per_m2);
    charges.rho2_envelope = std::abs(dc.rho2_c_per_m2);
  }

  const OdeCoefficients k = coefficients(stack);
  std::complex<double> leak{0.0, 0.0};
  double alpha = 0.0;
  if (cfg.include_leakage && cfg.include_polarization && k.sigma1 > 0.0 &&
      k.sigma2 > 0.0) {
    const double tau1 = k.eps1 / k.sigma1;
    const double tau2 = k.eps2 / k.sigma2;
    if (tau1 != tau2) {  // equal relaxation times mean no interfacial charging
      alpha = contact_conductivity(pair, p_pa, l0_m);
      if (alpha > 0.0) leak = (charges.rho2 - charges.rho1) / (tau2 - tau1);
    }
  }
  return make_gap_field_model(stack, charges, leak, alpha, cfg);
}

double evaluate_pressure(const SimulationConfig& cfg,
                         const PerssonKernel& kernel, const ElasticPair& pair,
                         const InterfaceStack& proto, double p_pa, double l0_m,
                         SeparationDistribution* dist_out) {
  SeparationDistribution dist = kernel.distribution(p_pa);
  const GapFieldModel model = model_at_mean_gap(
      cfg, pair, proto, dist.mean_separation_m, p_pa, l0_m);
  const double pe = electrostatic_pressure(dist, model, cfg.parallel);
  if (dist_out) *dist_out = std::move(dist);
  return pe;
}

}  // namespace

double GapFieldModel::envelope_at(double u_m) const {
  if (!(u_m > 0.0)) fail(ErrorCode::domain, "gap field: separation must be > 0");
  const double den = u_m + eps_gap_f_per_m * (r1_m2_per_f + r2_m2_per_f);
  double e_gap;
  if (include_polarization)
    e_gap = std::abs(v + r1_m2_per_f * rho1 - r2_m2_per_f * rho2) / den;
  else
    e_gap = std::abs(v) / den;
  if (!include_leakage || !include_polarization || alpha_s_per_m2 <= 0.0 ||
      u_m <= cutoff_m)
    return e_gap;
  const double e_leak = std::abs(leak_current) / (alpha_s_per_m2 * u_m);
  return std::max(e_gap - e_leak, 0.0);
}

GapFieldModel make_gap_field_model(const InterfaceStack& stack_at_mean_gap,
                                   const ChargePhasors& charges,
                                   std::complex<double> leak_current_a_per_m2,
                                   double alpha_s_per_m2,
                                   const SimulationConfig& cfg) {
  const OdeCoefficients k = coefficients(stack_at_mean_gap);
  GapFieldModel m;
  m.v = {stack_at_mean_gap.v0, 0.0};
  m.rho1 = charges.rho1;
  m.rho2 = charges.rho2;
  m.leak_current = leak_current_a_per_m2;
  m.r1_m2_per_f = stack_at_mean_gap.layer1.thickness_m / k.eps1;
  m.r2_m2_per_f = stack_at_mean_gap.layer2.thickness_m / k.eps2;
  m.eps_gap_f_per_m = k.eps_gap;
  m.alpha_s_per_m2 = alpha_s_per_m2;
  m.cutoff_m = cfg.cutoff_m;
  m.include_leakage = cfg.include_leakage;
  m.include_polarization = cfg.include_polarization;
  return m;
}

double electrostatic_pressure(const SeparationDistribution& dist,
                              const GapFieldModel& model, bool parallel) {
  if (dist.no_contact) return 0.0;
  const std::size_t n = dist.u_m.size();
  if (n < 2 || dist.density.size() != n)
    fail(ErrorCode::domain, "pressure: separation distribution has no grid");
  for (double d : dist.density)
    if (d < 0.0)
      fail(ErrorCode::domain, "pressure: negative density in distribution");

  std::vector<double> integrand(n);
#pragma omp parallel for schedule(static) if (parallel)
  for (long si = 0; si < static_cast<long>(n); ++si) {
    const auto i = static_cast<std::size_t>(si);
    const double e = model.envelope_at(dist.u_m[i]);
    integrand[i] = dist.density[i] * e * e;
  }
  return 0.5 * eps0_f_per_m * trapezoid(dist.u_m, integrand);
}

LoadResult self_consistent_load(const SimulationConfig& cfg,
                                const PerssonKernel& kernel,
                                const ElasticPair& pair,
                                const InterfaceStack& proto) {
  check_cfg(cfg);
  const double l0 = characteristic_length(kernel.spec());

  double p = cfg.p0_pa;
  std::vector<double> history;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    LoadResult out;
    const double pe =
        evaluate_pressure(cfg, kernel, pair, proto, p, l0, &out.dist);
    const double target = cfg.p0_pa + pe;
    history.push_back(p);
    if (std::abs(target - p) <= cfg.rel_tol * p) {
      out.p_pa = p;
      out.pe_pa = pe;
      out.iterations = it;
      return out;
    }
    p = (1.0 - cfg.damping) * p + cfg.damping * target;
  }
  std::ostringstream msg;
  msg << "load solver: no fixed point after " << cfg.max_iterations
      << " iterations; last iterates:";
  const std::size_t tail = std::min<std::size_t>(history.size(), 6);
  for (std::size_t i = history.size() - tail; i < history.size(); ++i)
    msg << ' ' << format_g9(history[i]);
  fail(ErrorCode::convergence, msg.str());
}

LoadResult self_consistent_load(const SimulationConfig& cfg,
                                const RoughnessSpec& spec,
                                const ElasticPair& pair,
                                const InterfaceStack& proto) {
  PerssonOptions opt;
  opt.parallel = cfg.parallel;
  return self_consistent_load(cfg, PerssonKernel(spec, pair.y_eff_pa, opt),
                              pair, proto);
}

ForceSweepResult force_sweep(const SimulationConfig& cfg,
                             const RoughnessSpec& spec, const ElasticPair& pair,
                             const DielectricLayer& layer1,
                             const DielectricLayer& layer2,
                             const GapMedium& gap) {
  check_cfg(cfg);
  if (cfg.freqs_hz.empty())
    fail(ErrorCode::domain, "sweep: frequency grid is empty");

  PerssonOptions opt;
  opt.parallel = cfg.parallel;
  const PerssonKernel kernel(spec, pair.y_eff_pa, opt);

  const std::size_t n = cfg.freqs_hz.size();
  std::vector<std::optional<ForceSweepPoint>> slots(n);
  std::vector<std::string> errors(n);

  const bool par = cfg.parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (long si = 0; si < static_cast<long>(n); ++si) {
    const auto i = static_cast<std::size_t>(si);
    const double f = cfg.freqs_hz[i];
    try {
      if (!(f > 0.0))
        fail(ErrorCode::domain, "sweep frequencies must be > 0");
      const double omega = 2.0 * 3.14159265358979323846 * f;
      const ElasticPair pair_f = ElasticPair::from_layers(layer1, layer2, f);
      InterfaceStack proto;
      proto.layer1 = layer1;
      proto.gap = gap;
      proto.gap_m = 1.0;  // placeholder; the load solver sets the mean gap
      proto.layer2 = layer2;
      proto.v0 = cfg.v0;
      proto.omega_rad_s = omega;
      const LoadResult load = self_consistent_load(cfg, kernel, pair_f, proto);
      ForceSweepPoint pt;
      pt.freq_hz = f;
      pt.pe_pa = load.pe_pa;
      pt.fe_n = load.pe_pa * load.dist.area_ratio * cfg.a0_m2;
      pt.mean_sep_m = load.dist.mean_separation_m;
      pt.area_ratio = load.dist.area_ratio;
      pt.loss_tangent = loss_tangent_at(layer2, omega);
      slots[i] = pt;
    } catch (const Error& e) {
      errors[i] = e.what();
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }

  ForceSweepResult out;
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i])
      out.points.push_back(*slots[i]);
    else
      out.failures.emplace_back(cfg.freqs_hz[i], errors[i]);
  }
  for (const auto& [f, why] : out.failures)
    log::error("sweep point " + format_g9(f) + " Hz failed: " + why);
  return out;
}

SensitivityParam sensitivity_param_from_name(const std::string& name) {
  if (name == "d1") return SensitivityParam::d1;
  if (name == "d2") return SensitivityParam::d2;
  if (name == "eps1") return SensitivityParam::eps1;
  if (name == "Y2" || name == "y2") return SensitivityParam::y2;
  fail(ErrorCode::domain,
       "unknown sensitivity parameter '" + name +
           "' (expected one of d1, d2, eps1, Y2)");
}

const char* sensitivity_param_name(SensitivityParam p) {
  switch (p) {
    case SensitivityParam::d1: return "d1";
    case SensitivityParam::d2: return "d2";
    case SensitivityParam::eps1: return "eps1";
    case SensitivityParam::y2: return "Y2";
  }
  return "?";
}

std::vector<SensitivityPoint> sensitivity_analysis(
    const SimulationConfig& cfg, const RoughnessSpec& spec,
    const DielectricLayer& layer1, const DielectricLayer& layer2,
    const GapMedium& gap, SensitivityParam param, double delta) {
  if (!(delta > -1.0))
    fail(ErrorCode::domain, "sensitivity: delta must exceed -1");
  if (cfg.freqs_hz.empty())
    fail(ErrorCode::domain, "sensitivity: frequency grid is empty");

  DielectricLayer l1p = layer1;
  DielectricLayer l2p = layer2;
  const double k = 1.0 + delta;
  switch (param) {
    case SensitivityParam::d1: l1p.thickness_m *= k; break;
    case SensitivityParam::d2: l2p.thickness_m *= k; break;
    case SensitivityParam::eps1:
      l1p.rel_permittivity = l1p.rel_permittivity.scaled(k);
      break;
    case SensitivityParam::y2: l2p.elastic_modulus_pa *= k; break;
  }

  const double f_ref = cfg.freqs_hz.front();
  const ForceSweepResult base = force_sweep(
      cfg, spec, ElasticPair::from_layers(layer1, layer2, f_ref), layer1,
      layer2, gap);
  const ForceSweepResult pert = force_sweep(
      cfg, spec, ElasticPair::from_layers(l1p, l2p, f_ref), l1p, l2p, gap);

  std::vector<SensitivityPoint> out;
  for (const ForceSweepPoint& b : base.points) {
    for (const ForceSweepPoint& q : pert.points) {
      if (q.freq_hz != b.freq_hz) continue;
      SensitivityPoint s;
      s.freq_hz = b.freq_hz;
      s.base_fe_n = b.fe_n;
      s.perturbed_fe_n = q.fe_n;
      if (b.fe_n == 0.0)
        s.undefined = true;
      else
        s.change_percent = 100.0 * (q.fe_n - b.fe_n) / b.fe_n;
      out.push_back(s);
      break;
    }
  }
  return out;
}

double friction_inferred_force(double mu_off, double mu_on, double fn_n) {
  if (!(mu_on > 0.0))
    fail(ErrorCode::domain, "friction: on-state coefficient must be > 0");
  if (mu_off < 0.0)
    fail(ErrorCode::domain, "friction: off-state coefficient must be >= 0");
  if (fn_n < 0.0)
    fail(ErrorCode::domain, "friction: normal force must be >= 0");
  return (1.0 - mu_off / mu_on) * fn_n;
}

}  // namespace ea
