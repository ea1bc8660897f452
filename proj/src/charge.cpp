#include "ea/charge.hpp"

#include <cmath>
#include <cstddef>

#include "ea/constants.hpp"
#include "ea/errors.hpp"

namespace ea {

namespace {

constexpr double two_pi = 6.28318530717958647692;

void check_stack(const InterfaceStack& s) {
  if (!(s.layer1.thickness_m > 0.0) || !(s.layer2.thickness_m > 0.0))
    fail(ErrorCode::domain, "stack: layer thicknesses must be > 0");
  if (!(s.gap_m > 0.0)) fail(ErrorCode::domain, "stack: gap must be > 0");
  if (s.omega_rad_s < 0.0)
    fail(ErrorCode::domain, "stack: angular frequency must be >= 0");
}

// exp(-gamma t) cosh(theta t) and exp(-gamma t) sinh(theta t)/theta, written
// so that nothing overflows: gamma >= |Re theta| for any decaying pair, and
// theta^2 < 0 switches the hyperbolics to circular functions. A short series
// covers theta^2 t^2 ~ 0 where sinh(theta t)/theta loses digits.
void decay_pair(double gamma, double theta2, double t, double* c_out,
                double* s_out) {
  const double z = theta2 * t * t;
  if (std::abs(z) < 1e-8) {
    const double damp = std::exp(-gamma * t);
    *c_out = damp * (1.0 + z / 2.0 + z * z / 24.0);
    *s_out = damp * t * (1.0 + z / 6.0 + z * z / 120.0);
    return;
  }
  if (theta2 > 0.0) {
    const double th = std::sqrt(theta2);
    const double ep = std::exp((th - gamma) * t);
    const double em = std::exp(-(th + gamma) * t);
    *c_out = 0.5 * (ep + em);
    *s_out = (ep - em) / (2.0 * th);
    return;
  }
  const double mu = std::sqrt(-theta2);
  const double damp = std::exp(-gamma * t);
  *c_out = damp * std::cos(mu * t);
  *s_out = damp * std::sin(mu * t) / mu;
}

}  // namespace

OdeCoefficients coefficients(const InterfaceStack& stack) {
  check_stack(stack);
  const double f_hz = stack.omega_rad_s / two_pi;

  OdeCoefficients k;
  k.eps1 = eps0_f_per_m * stack.layer1.rel_permittivity.at(f_hz);
  k.eps_gap = eps0_f_per_m * stack.gap.rel_permittivity;
  k.eps2 = eps0_f_per_m * stack.layer2.rel_permittivity.at(f_hz);
  k.sigma1 = stack.layer1.conductivity_s_per_m.at(f_hz);
  k.sigma_gap = stack.gap.conductivity_s_per_m;
  k.sigma2 = stack.layer2.conductivity_s_per_m.at(f_hz);
  if (!(k.eps1 > 0.0 && k.eps_gap > 0.0 && k.eps2 > 0.0))
    fail(ErrorCode::domain, "stack: permittivities must be > 0");
  if (k.sigma1 < 0.0 || k.sigma_gap < 0.0 || k.sigma2 < 0.0)
    fail(ErrorCode::domain, "stack: conductivities must be >= 0");

  const double d1 = stack.layer1.thickness_m;
  const double d2 = stack.layer2.thickness_m;
  const double u = stack.gap_m;
  const double r1 = d1 / k.eps1;  // per-layer eps-scaled thicknesses
  const double rg = u / k.eps_gap;
  const double r2 = d2 / k.eps2;

  k.den1_m = d1 + k.eps1 * (rg + r2);
  k.den_gap_m = u + k.eps_gap * (r1 + r2);
  k.den2_m = d2 + k.eps2 * (r1 + rg);

  k.a = k.sigma1 * (rg + r2) / k.den1_m + k.sigma_gap * r1 / k.den_gap_m;
  k.b = k.sigma1 * r2 / k.den1_m - k.sigma_gap * r2 / k.den_gap_m;
  k.c = -k.sigma1 / k.den1_m + k.sigma_gap / k.den_gap_m;
  k.d = k.sigma2 * r1 / k.den2_m - k.sigma_gap * r1 / k.den_gap_m;
  k.e = k.sigma2 * (r1 + rg) / k.den2_m + k.sigma_gap * r2 / k.den_gap_m;
  k.f = k.sigma2 / k.den2_m - k.sigma_gap / k.den_gap_m;
  return k;
}

ChargePair steady_state_dc(const InterfaceStack& stack) {
  const OdeCoefficients k = coefficients(stack);
  const double det = k.a * k.e - k.b * k.d;
  if (det == 0.0)
    fail(ErrorCode::domain, "steady state: stack has no unique DC fixed point");
  // a rho1 + b rho2 = -c V,  d rho1 + e rho2 = -f V
  ChargePair rho;
  rho.rho1_c_per_m2 = stack.v0 * (k.b * k.f - k.c * k.e) / det;
  rho.rho2_c_per_m2 = stack.v0 * (k.c * k.d - k.a * k.f) / det;
  return rho;
}

TransientCoefficients transient_coefficients(const OdeCoefficients& k,
                                             double omega_rad_s) {
  const double a = k.a, b = k.b, c = k.c, d = k.d, e = k.e, f = k.f;
  const double w = omega_rad_s;
  const double w2 = w * w;

  TransientCoefficients tc;
  tc.psi = w2 * w2 + (a * a + e * e + 2.0 * b * d) * w2 +
           (a * e - b * d) * (a * e - b * d);
  if (!(tc.psi > 0.0))
    fail(ErrorCode::domain, "transient: degenerate coefficient matrix");

  tc.alpha1 = -((a * c + b * f) * w2 + a * c * e * e + b * b * d * f -
                a * b * e * f - b * c * d * e) /
              tc.psi;
  tc.alpha2 = -(c * w2 * w +
                (c * e * e - a * b * f + b * c * d - b * e * f) * w) /
              tc.psi;
  tc.beta1 = -((c * d + e * f) * w2 + b * c * d * d + a * a * e * f -
               a * b * d * f - a * c * d * e) /
             tc.psi;
  tc.beta2 = -(f * w2 * w +
               (f * a * a - a * c * d + b * d * f - c * d * e) * w) /
             tc.psi;
  tc.eta = -tc.alpha1;
  tc.kappa = -tc.beta1;
  tc.lambda = ((c * a * e - c * b * d) * w2 + c * a * e * e * e -
               c * b * d * e * e - f * a * b * e * e - f * b * e * a * a +
               f * a * d * b * b + c * a * b * d * e - c * b * b * d * d +
               f * d * e * b * b) /
              tc.psi;
  tc.delta = ((f * a * e - f * b * d) * w2 + f * e * a * a * a -
              f * b * d * a * a - c * d * e * a * a - c * a * d * e * e +
              c * a * b * d * d + f * a * b * d * e - f * b * b * d * d +
              c * b * e * d * d) /
             tc.psi;
  tc.gamma = 0.5 * (a + e);
  tc.theta2 = 0.25 * (a - e) * (a - e) + b * d;
  return tc;
}

ChargePair transient_ac_analytic(const InterfaceStack& stack, double t_s) {
  if (t_s < 0.0) fail(ErrorCode::domain, "transient: time must be >= 0");
  const OdeCoefficients k = coefficients(stack);
  const TransientCoefficients tc =
      transient_coefficients(k, stack.omega_rad_s);

  const double wt = stack.omega_rad_s * t_s;
  const double cwt = std::cos(wt), swt = std::sin(wt);
  double ch = 0.0, sh = 0.0;
  decay_pair(tc.gamma, tc.theta2, t_s, &ch, &sh);

  ChargePair rho;
  rho.rho1_c_per_m2 =
      stack.v0 * (tc.alpha1 * cwt + tc.alpha2 * swt + tc.eta * ch +
                  (tc.lambda - tc.eta * tc.gamma) * sh);
  rho.rho2_c_per_m2 =
      stack.v0 * (tc.beta1 * cwt + tc.beta2 * swt + tc.kappa * ch +
                  (tc.delta - tc.kappa * tc.gamma) * sh);
  return rho;
}

ChargePhasors steady_state_ac_envelope(const InterfaceStack& stack) {
  const OdeCoefficients k = coefficients(stack);
  const TransientCoefficients tc =
      transient_coefficients(k, stack.omega_rad_s);
  ChargePhasors out;
  out.rho1 = stack.v0 * std::complex<double>(tc.alpha1, -tc.alpha2);
  out.rho2 = stack.v0 * std::complex<double>(tc.beta1, -tc.beta2);
  out.rho1_envelope = std::abs(out.rho1);
  out.rho2_envelope = std::abs(out.rho2);
  return out;
}

ChargeTrace integrate_charges_numeric(const InterfaceStack& stack,
                                      double t_end_s, double dt_s) {
  if (!(t_end_s > 0.0) || !(dt_s > 0.0))
    fail(ErrorCode::domain, "integrate: need t_end > 0 and dt > 0");
  const OdeCoefficients k = coefficients(stack);
  const double steps_needed = std::ceil(t_end_s / dt_s);
  if (steps_needed > 1e9)
    fail(ErrorCode::domain,
         "integrate: step count exceeds 1e9; enlarge dt or shorten t_end");
  const auto n = static_cast<std::size_t>(steps_needed);
  const double dt = t_end_s / static_cast<double>(n);

  const double w = stack.omega_rad_s, v0 = stack.v0;
  auto deriv = [&](double t, double r1, double r2, double* dr1, double* dr2) {
    const double v = v0 * std::cos(w * t);
    *dr1 = -(k.a * r1 + k.b * r2 + k.c * v);
    *dr2 = -(k.d * r1 + k.e * r2 + k.f * v);
  };

  const std::size_t stride = std::max<std::size_t>(1, n / 4096);
  ChargeTrace trace;
  trace.t_s.reserve(n / stride + 2);
  trace.rho1.reserve(n / stride + 2);
  trace.rho2.reserve(n / stride + 2);

  double r1 = 0.0, r2 = 0.0;
  trace.t_s.push_back(0.0);
  trace.rho1.push_back(0.0);
  trace.rho2.push_back(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = dt * static_cast<double>(i);
    double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
    deriv(t, r1, r2, &k1a, &k1b);
    deriv(t + 0.5 * dt, r1 + 0.5 * dt * k1a, r2 + 0.5 * dt * k1b, &k2a, &k2b);
    deriv(t + 0.5 * dt, r1 + 0.5 * dt * k2a, r2 + 0.5 * dt * k2b, &k3a, &k3b);
    deriv(t + dt, r1 + dt * k3a, r2 + dt * k3b, &k4a, &k4b);
    r1 += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    r2 += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    if ((i + 1) % stride == 0 || i + 1 == n) {
      trace.t_s.push_back(dt * static_cast<double>(i + 1));
      trace.rho1.push_back(r1);
      trace.rho2.push_back(r2);
    }
  }
  trace.t_s.back() = t_end_s;
  return trace;
}

LeakageField leakage_field(const InterfaceStack& stack, const ChargePair& rho,
                           double alpha_s_per_m2, double tau1_s,
                           double tau2_s) {
  check_stack(stack);
  if (alpha_s_per_m2 < 0.0)
    fail(ErrorCode::domain, "leakage: contact conductivity must be >= 0");
  const double dtau = tau2_s - tau1_s;
  if (dtau == 0.0)
    fail(ErrorCode::domain,
         "leakage: equal relaxation times leave the leak current undefined");
  LeakageField out;
  out.current_a_per_m2 = (rho.rho2_c_per_m2 - rho.rho1_c_per_m2) / dtau;
  if (stack.gap_m > leak_cutoff_m && alpha_s_per_m2 > 0.0)
    out.field_v_per_m = out.current_a_per_m2 / (alpha_s_per_m2 * stack.gap_m);
  return out;
}

FieldBreakdown fields_at(const InterfaceStack& stack, const ChargePair& rho,
                         double v) {
  const OdeCoefficients k = coefficients(stack);
  const double r1 = stack.layer1.thickness_m / k.eps1;
  const double rg = stack.gap_m / k.eps_gap;
  const double r2 = stack.layer2.thickness_m / k.eps2;
  const double p1 = rho.rho1_c_per_m2, p2 = rho.rho2_c_per_m2;
  FieldBreakdown f;
  f.e1_v_per_m = (v - (rg + r2) * p1 - r2 * p2) / k.den1_m;
  f.e_gap_v_per_m = (v + r1 * p1 - r2 * p2) / k.den_gap_m;
  f.e2_v_per_m = (v + r1 * p1 + (r1 + rg) * p2) / k.den2_m;
  return f;
}

double total_gap_field(const InterfaceStack& stack, const ChargePair& rho,
                       const LeakageField& leak) {
  const FieldBreakdown f = fields_at(stack, rho, stack.v0);
  return f.e_gap_v_per_m - leak.field_v_per_m;
}

}  // namespace ea
