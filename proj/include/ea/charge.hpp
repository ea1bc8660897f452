#pragma once

#include <complex>
#include <vector>

#include "ea/materials.hpp"

namespace ea {

// Electrode coating | air gap | counter surface, driven by V(t) = v0 cos(wt).
// omega_rad_s = 0 encodes a DC drive of amplitude v0.
struct InterfaceStack {
  DielectricLayer layer1;  // coating on the driven electrode
  GapMedium gap;
  double gap_m = 0.0;      // interfacial separation u
  DielectricLayer layer2;  // counter surface (skin or test dielectric)
  double v0 = 0.0;
  double omega_rad_s = 0.0;
};

// The stack collapsed to the pair of charge-balance equations
//   -drho1/dt = a rho1 + b rho2 + c V
//   -drho2/dt = d rho1 + e rho2 + f V
// for the free charge densities on the coating|gap and gap|counter interfaces.
struct OdeCoefficients {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
  double den1_m = 0, den_gap_m = 0, den2_m = 0;  // effective thicknesses
  double eps1 = 0, eps_gap = 0, eps2 = 0;        // absolute permittivities, F/m
  double sigma1 = 0, sigma_gap = 0, sigma2 = 0;  // conductivities, S/m
};

OdeCoefficients coefficients(const InterfaceStack& stack);

struct ChargePair {
  double rho1_c_per_m2 = 0.0;
  double rho2_c_per_m2 = 0.0;
};

// Fully relaxed charges under a DC drive of amplitude v0.
ChargePair steady_state_dc(const InterfaceStack& stack);

// Closed-form response to the drive switched on at t = 0 with uncharged
// interfaces: rho1(t) = v0 [alpha1 cos wt + alpha2 sin wt
//                           + eta e^{-gamma t} cosh(theta t)
//                           + (lambda - eta gamma) e^{-gamma t} sinh(theta t)/theta]
// and the same shape for rho2 with (beta1, beta2, kappa, delta). theta^2 may be
// negative, in which case the hyperbolics turn into circular functions.
struct TransientCoefficients {
  double alpha1 = 0, alpha2 = 0, beta1 = 0, beta2 = 0;
  double eta = 0, kappa = 0, lambda = 0, delta = 0;
  double gamma = 0, theta2 = 0;
  double psi = 0;  // shared denominator, kept for diagnostics
};

TransientCoefficients transient_coefficients(const OdeCoefficients& k,
                                             double omega_rad_s);

ChargePair transient_ac_analytic(const InterfaceStack& stack, double t_s);

// Steady-state phasors with respect to V(t) = Re[v0 e^{jwt}] and their
// envelopes v0 sqrt(alpha1^2 + alpha2^2) etc.
struct ChargePhasors {
  std::complex<double> rho1{0.0, 0.0};
  std::complex<double> rho2{0.0, 0.0};
  double rho1_envelope = 0.0;
  double rho2_envelope = 0.0;
};

ChargePhasors steady_state_ac_envelope(const InterfaceStack& stack);

// Fixed-step RK4 integration from uncharged interfaces; the trace is
// subsampled to a bounded number of points but always contains t = 0 and
// t = t_end exactly.
struct ChargeTrace {
  std::vector<double> t_s, rho1, rho2;
};

ChargeTrace integrate_charges_numeric(const InterfaceStack& stack,
                                      double t_end_s, double dt_s);

// Charge leaking across conductive asperity bridges: J_L = (rho2 - rho1) /
// (tau2 - tau1), E_L = J_L / (alpha u). The field term exists only above the
// conduction cutoff separation and for a positive contact conductivity.
struct LeakageField {
  double current_a_per_m2 = 0.0;
  double field_v_per_m = 0.0;
};

LeakageField leakage_field(const InterfaceStack& stack, const ChargePair& rho,
                           double alpha_s_per_m2, double tau1_s, double tau2_s);

// Gap field with the leak contribution subtracted, for the instantaneous
// drive V = v0.
double total_gap_field(const InterfaceStack& stack, const ChargePair& rho,
                       const LeakageField& leak);

// Instantaneous fields in the three regions for a given drive voltage.
struct FieldBreakdown {
  double e1_v_per_m = 0.0;
  double e_gap_v_per_m = 0.0;
  double e2_v_per_m = 0.0;
};

FieldBreakdown fields_at(const InterfaceStack& stack, const ChargePair& rho,
                         double v);

}  // namespace ea
