#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ea/charge.hpp"
#include "ea/constants.hpp"
#include "ea/electrostatics.hpp"
#include "ea/errors.hpp"
#include "ea/persson.hpp"
#include "ea/quadrature.hpp"

using namespace ea;

namespace {

DielectricLayer glass() {
  DielectricLayer l;
  l.name = "sio2";
  l.thickness_m = 1e-6;
  l.rel_permittivity = Dispersive::constant(3.9);
  l.conductivity_s_per_m = Dispersive::constant(1e-13);
  l.elastic_modulus_pa = 7e10;
  l.poisson = 0.15;
  return l;
}

DielectricLayer skin_at_100hz() {
  DielectricLayer l;
  l.name = "sc";
  l.thickness_m = 200e-6;
  l.rel_permittivity = Dispersive::constant(916.4);
  l.conductivity_s_per_m = Dispersive::constant(2.53e-10);
  l.elastic_modulus_pa = 1e7;
  l.poisson = 0.5;
  return l;
}

RoughnessSpec finger_spec() {
  RoughnessSpec s;
  s.h_rms_m = 22e-6;
  s.hurst = 0.86;
  s.q_l = 9e2;
  s.q_0 = 8e3;
  s.q_1 = 1e10;
  return s;
}

InterfaceStack proto_stack(double freq_hz, double v0 = 75.0) {
  InterfaceStack s;
  s.layer1 = glass();
  s.layer2 = skin_at_100hz();
  s.gap_m = 1.0;  // placeholder until a mean gap is known
  s.v0 = v0;
  s.omega_rad_s = 2.0 * M_PI * freq_hz;
  return s;
}

// A bare-divider field model with hand-set geometry (no charges, no leak).
GapFieldModel divider_model(double v, double r_sum_times_eps) {
  GapFieldModel m;
  m.v = {v, 0.0};
  m.r1_m2_per_f = 0.5 * r_sum_times_eps / eps0_f_per_m;
  m.r2_m2_per_f = 0.5 * r_sum_times_eps / eps0_f_per_m;
  m.eps_gap_f_per_m = eps0_f_per_m;
  m.include_polarization = false;
  m.include_leakage = false;
  return m;
}

}  // namespace

TEST_CASE("friction-inferred force") {
  CHECK(std::abs(friction_inferred_force(0.512, 0.64, 0.5) - 0.1) <= 1e-15);
  CHECK(friction_inferred_force(0.4, 0.4, 2.0) == 0.0);
  // inconsistent data gives a negative estimate and stays unclamped
  CHECK(friction_inferred_force(0.55, 0.5, 1.0) < 0.0);
  CHECK(friction_inferred_force(0.0, 0.6, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(friction_inferred_force(0.5, 0.0, 1.0), Error);
  CHECK_THROWS_AS(friction_inferred_force(-0.1, 0.5, 1.0), Error);
  CHECK_THROWS_AS(friction_inferred_force(0.5, 0.6, -1.0), Error);
}

TEST_CASE("gap field envelope: bare divider and polarization terms") {
  const double c = 2e-6;  // eps_g * (r1 + r2)
  const GapFieldModel bare = divider_model(75.0, c);
  for (double u : {1e-7, 1e-6, 5e-5})
    CHECK(bare.envelope_at(u) == doctest::Approx(75.0 / (u + c)).epsilon(1e-13));
  CHECK_THROWS_AS(bare.envelope_at(0.0), Error);

  GapFieldModel pol = bare;
  pol.include_polarization = true;
  pol.rho1 = {3e-7, 1e-7};
  pol.rho2 = {-2e-7, 2e-8};
  const double u = 3e-6;
  const std::complex<double> num =
      std::complex<double>{75.0, 0.0} + pol.r1_m2_per_f * pol.rho1 -
      pol.r2_m2_per_f * pol.rho2;
  CHECK(pol.envelope_at(u) ==
        doctest::Approx(std::abs(num) / (u + c)).epsilon(1e-13));
}

TEST_CASE("leak reduction floors at zero and respects the cutoff") {
  GapFieldModel m = divider_model(75.0, 2e-6);
  m.include_polarization = true;
  m.include_leakage = true;
  m.alpha_s_per_m2 = 1e-12;
  m.leak_current = {1e-11, 0.0};
  const double u = 1e-5;
  const double e_gap = 75.0 / (u + 2e-6);
  const double e_leak = 1e-11 / (m.alpha_s_per_m2 * u);
  REQUIRE(e_leak < e_gap);  // keep this case on the un-floored branch
  CHECK(m.envelope_at(u) == doctest::Approx(e_gap - e_leak).epsilon(1e-12));

  // overwhelming leak cannot reverse the field
  m.leak_current = {1.0, 0.0};
  CHECK(m.envelope_at(u) == 0.0);

  // below the conduction cutoff the leak term never engages
  m.cutoff_m = 1e-8;
  CHECK(m.envelope_at(5e-9) ==
        doctest::Approx(75.0 / (5e-9 + 2e-6)).epsilon(1e-12));

  // switching leakage off recovers the full gap field
  m.include_leakage = false;
  m.leak_current = {1.0, 0.0};
  CHECK(m.envelope_at(u) == doctest::Approx(e_gap).epsilon(1e-13));
}

TEST_CASE("envelope agrees with the instantaneous field chain at DC") {
  InterfaceStack s = proto_stack(0.0);
  s.gap_m = 6.6e-5;
  const ChargePair rho = steady_state_dc(s);
  const double tau1 = relaxation_time(s.layer1, 2.0 * M_PI);
  const double tau2 = relaxation_time(s.layer2, 2.0 * M_PI);
  // conductive enough that the leak term stays well below the gap field
  const double alpha = 1e-8;
  const LeakageField leak = leakage_field(s, rho, alpha, tau1, tau2);

  ChargePhasors ph;
  ph.rho1 = {rho.rho1_c_per_m2, 0.0};
  ph.rho2 = {rho.rho2_c_per_m2, 0.0};
  SimulationConfig cfg;
  const GapFieldModel m = make_gap_field_model(
      s, ph, {leak.current_a_per_m2, 0.0}, alpha, cfg);
  const double direct = total_gap_field(s, rho, leak);
  REQUIRE(direct > 0.0);
  CHECK(m.envelope_at(s.gap_m) == doctest::Approx(direct).epsilon(1e-12));

  // at a barely conductive contact the leak estimate dwarfs the gap field;
  // the signed chain goes negative while the envelope reports a fully
  // screened gap instead of a reversed one
  const double alpha_weak = 3.3e-12;
  const LeakageField weak = leakage_field(s, rho, alpha_weak, tau1, tau2);
  CHECK(total_gap_field(s, rho, weak) < 0.0);
  const GapFieldModel mw = make_gap_field_model(
      s, ph, {weak.current_a_per_m2, 0.0}, alpha_weak, cfg);
  CHECK(mw.envelope_at(s.gap_m) == 0.0);
}

TEST_CASE("pressure over a uniform separation band has a closed form") {
  const double a = 1e-6, b = 1e-5, c = 2e-6, v = 75.0;
  SeparationDistribution dist;
  const std::size_t n = 2001;
  for (std::size_t i = 0; i < n; ++i) {
    dist.u_m.push_back(a + (b - a) * double(i) / double(n - 1));
    dist.density.push_back(1.0 / (b - a));
  }
  const GapFieldModel m = divider_model(v, c);
  const double got = electrostatic_pressure(dist, m);
  const double expected = 0.5 * eps0_f_per_m / (b - a) * v * v *
                          (1.0 / (a + c) - 1.0 / (b + c));
  CHECK(got == doctest::Approx(expected).epsilon(1e-5));

  // serial and parallel integrate to the same bits
  CHECK(electrostatic_pressure(dist, m, false) ==
        electrostatic_pressure(dist, m, true));

  // doubling every field source quadruples the pressure exactly
  GapFieldModel dbl = m;
  dbl.v *= 2.0;
  dbl.rho1 *= 2.0;
  dbl.rho2 *= 2.0;
  dbl.leak_current *= 2.0;
  CHECK(electrostatic_pressure(dist, dbl) ==
        doctest::Approx(4.0 * got).epsilon(1e-12));

  SeparationDistribution none;
  none.no_contact = true;
  CHECK(electrostatic_pressure(none, m) == 0.0);

  dist.density[5] = -1.0;
  CHECK_THROWS_AS(electrostatic_pressure(dist, m), Error);
}

TEST_CASE("self-consistent load agrees with a bisection solve") {
  SimulationConfig cfg;
  cfg.freqs_hz = {100.0};
  cfg.rel_tol = 1e-8;
  PerssonOptions opt;
  opt.q_points_per_decade = 150;
  opt.u_nodes = 300;
  const ElasticPair pair =
      ElasticPair::from_layers(glass(), skin_at_100hz(), 100.0);
  const PerssonKernel kernel(finger_spec(), pair.y_eff_pa, opt);
  const InterfaceStack proto = proto_stack(100.0);
  const double l0 = characteristic_length(finger_spec());

  // the electrostatic share at a trial load, through the public pieces
  auto pe_at = [&](double p) {
    const SeparationDistribution dist = kernel.distribution(p);
    InterfaceStack stack = proto;
    stack.gap_m = dist.mean_separation_m;
    const ChargePhasors charges = steady_state_ac_envelope(stack);
    const OdeCoefficients k = coefficients(stack);
    const double tau1 = k.eps1 / k.sigma1, tau2 = k.eps2 / k.sigma2;
    const double alpha = contact_conductivity(pair, p, l0);
    const std::complex<double> leak =
        (charges.rho2 - charges.rho1) / (tau2 - tau1);
    const GapFieldModel m =
        make_gap_field_model(stack, charges, leak, alpha, cfg);
    return electrostatic_pressure(dist, m);
  };

  const LoadResult got = self_consistent_load(cfg, kernel, pair, proto);
  CHECK(got.iterations >= 1);
  CHECK(got.pe_pa > 0.0);
  CHECK(got.p_pa > cfg.p0_pa);

  double lo = cfg.p0_pa, hi = cfg.p0_pa + pe_at(cfg.p0_pa);
  while (cfg.p0_pa + pe_at(hi) - hi > 0.0) hi *= 1.5;
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((cfg.p0_pa + pe_at(mid) - mid > 0.0) ? lo : hi) = mid;
  }
  const double p_star = 0.5 * (lo + hi);
  CHECK(got.p_pa == doctest::Approx(p_star).epsilon(1e-5));
  CHECK(got.pe_pa == doctest::Approx(pe_at(got.p_pa)).epsilon(1e-6));
}

TEST_CASE("force sweep records per-frequency failures without aborting") {
  SimulationConfig cfg;
  cfg.freqs_hz = {-5.0, 100.0};
  cfg.parallel = false;
  const ElasticPair pair =
      ElasticPair::from_layers(glass(), skin_at_100hz(), 100.0);
  const ForceSweepResult r =
      force_sweep(cfg, finger_spec(), pair, glass(), skin_at_100hz());
  REQUIRE(r.points.size() == 1);
  CHECK(r.points[0].freq_hz == 100.0);
  CHECK(r.points[0].fe_n > 0.0);
  CHECK(r.points[0].area_ratio > 0.0);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].first == -5.0);

  SimulationConfig all_bad = cfg;
  all_bad.freqs_hz = {0.0};
  const ForceSweepResult rb =
      force_sweep(all_bad, finger_spec(), pair, glass(), skin_at_100hz());
  CHECK(rb.points.empty());
  CHECK(rb.failures.size() == 1);
}

TEST_CASE("sensitivity parameter names round-trip") {
  for (const char* n : {"d1", "d2", "eps1", "Y2"})
    CHECK(sensitivity_param_name(sensitivity_param_from_name(n)) ==
          std::string(n));
  CHECK(sensitivity_param_from_name("y2") == SensitivityParam::y2);
  CHECK_THROWS_AS(sensitivity_param_from_name("nu1"), Error);
}

TEST_CASE("disabling polarization strengthens the low-frequency force") {
  SimulationConfig cfg;
  cfg.freqs_hz = {1.0};
  cfg.parallel = false;
  PerssonOptions opt;
  opt.q_points_per_decade = 150;
  opt.u_nodes = 300;
  DielectricLayer skin_lossy = skin_at_100hz();
  // pin the counter layer at its 1 Hz values
  skin_lossy.rel_permittivity = Dispersive::constant(4000.0);
  skin_lossy.conductivity_s_per_m = Dispersive::constant(8e-11);
  const ElasticPair pair = ElasticPair::from_layers(glass(), skin_lossy, 1.0);
  const PerssonKernel kernel(finger_spec(), pair.y_eff_pa, opt);
  InterfaceStack proto = proto_stack(1.0);
  proto.layer2 = skin_lossy;

  const LoadResult with_pol = self_consistent_load(cfg, kernel, pair, proto);
  SimulationConfig nopol = cfg;
  nopol.include_polarization = false;
  const LoadResult without_pol =
      self_consistent_load(nopol, kernel, pair, proto);
  CHECK(without_pol.pe_pa > with_pol.pe_pa);
}
