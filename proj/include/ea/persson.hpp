#pragma once

#include <cstddef>
#include <vector>

#include "ea/materials.hpp"

namespace ea {

// Self-affine roughness description of the fingerpad surface.
struct RoughnessSpec {
  double h_rms_m = 0.0;
  double hurst = 0.0;
  double q_l = 0.0;  // smallest wavevector of the measured spectrum, 1/m
  double q_0 = 0.0;  // roll-off wavevector, 1/m
  double q_1 = 0.0;  // shortest-wavelength cutoff, 1/m
  // Hold C(q) = C(q_0) over [q_l, q_0). The contact integrals start at q_0
  // either way; the plateau only affects direct spectrum queries.
  bool rolloff_plateau = true;
};

// Effective elastic modulus and conductivity of the two contacting solids:
// 1/Y* = (1-nu1^2)/Y1 + (1-nu2^2)/Y2,  1/sigma* = 1/sigma1 + 1/sigma2.
struct ElasticPair {
  double y_eff_pa = 0.0;
  double sigma_eff_s_per_m = 0.0;

  static ElasticPair from_layers(const DielectricLayer& a,
                                 const DielectricLayer& b, double freq_hz);
};

// Discretization knobs for the contact integrals.
struct PerssonOptions {
  int q_points_per_decade = 400;
  int zeta_points_per_decade = 48;
  std::size_t u_nodes = 600;
  double u_min_m = 1e-10;
  double u_max_over_hrms = 50.0;
  double refine_rel_tol = 1e-4;
  bool parallel = true;
};

// Distribution of interfacial separations at one squeezing pressure.
struct SeparationDistribution {
  std::vector<double> u_m;       // strictly increasing separation grid
  std::vector<double> density;   // P(u), 1/m
  double pressure_pa = 0.0;
  double area_ratio = 0.0;       // real contact fraction at full magnification
  double mean_separation_m = 0.0;
  bool no_contact = false;       // p = 0 sentinel: empty distribution
};

// C(q), m^4. Defined on [q_l, q_1] (plateau below q_0 when enabled, otherwise
// on [q_0, q_1] only).
double power_spectrum(const RoughnessSpec& spec, double q);

// Precomputes the prefix integrals of q*C(q) and q^3*C(q) on a shared
// log-spaced q grid so that every magnification-dependent quantity is O(1) or
// a single quadrature. Construction performs one automatic grid-refinement
// check and refines once if the prefix totals have not converged.
class PerssonKernel {
 public:
  PerssonKernel(const RoughnessSpec& spec, double y_eff_pa,
                const PerssonOptions& opt = {});

  // G(zeta) = (pi/4) Y*^2 * Int_{q0}^{zeta q0} q^3 C(q) dq, Pa^2.
  double magnification_variance(double zeta) const;

  // Builds the full separation distribution at squeezing pressure p.
  SeparationDistribution distribution(double p_pa) const;

  const RoughnessSpec& spec() const { return spec_; }
  double y_eff_pa() const { return y_eff_; }
  const PerssonOptions& options() const { return opt_; }

 private:
  double prefix_s1(double q) const;  // Int_{q0}^{q} q' C dq'
  double prefix_s3(double q) const;  // Int_{q0}^{q} q'^3 C dq'

  RoughnessSpec spec_;
  double y_eff_ = 0.0;
  PerssonOptions opt_;
  std::vector<double> q_;           // log-spaced grid q0..q1
  std::vector<double> s1_;          // prefix integrals on q_
  std::vector<double> s3_;
  std::vector<double> zeta_;        // log-spaced magnification grid 1..q1/q0
  std::vector<std::size_t> zidx_;   // q-grid index of each magnification node
};

// erf(p / (2 sqrt(G))). G = 0 with p > 0 gives the full-contact limit 1;
// p = G = 0 gives 0.
double area_ratio(double p_pa, double g_pa2);

// Convenience wrappers matching the one-shot call pattern.
double magnification_variance(const RoughnessSpec& spec,
                              const ElasticPair& pair, double zeta,
                              const PerssonOptions& opt = {});
double area_ratio(const RoughnessSpec& spec, const ElasticPair& pair,
                  double p_pa, double zeta, const PerssonOptions& opt = {});
SeparationDistribution separation_distribution(const RoughnessSpec& spec,
                                               const ElasticPair& pair,
                                               double p_pa,
                                               const PerssonOptions& opt = {});

// r(H): the dimensionless integral entering the characteristic length; the
// H = 1/2 case closes to pi/2 and anchors the quadrature.
double characteristic_length_r(double hurst);

// L0 = sqrt(2(1-H)/(pi H)) * h_rms * [ r(H) - (q0/q1)^H ].
double characteristic_length(const RoughnessSpec& spec);

// alpha = 2 sigma* p / (Y* L0), the electric contact conductivity per gap
// scale, S/m^2.
double contact_conductivity(const ElasticPair& pair, double p_pa, double l0_m);

}  // namespace ea
