#pragma once

#include <string>
#include <vector>

#include "ea/interp.hpp"

namespace ea {

// A scalar material property that is either constant or tabulated against
// frequency. Tabulated values interpolate piecewise-linearly in
// log(frequency)-log(value) space, which tracks the near-power-law shape of
// dielectric dispersion curves. Extrapolation is off by default (strict).
class Dispersive {
 public:
  static Dispersive constant(double value);
  static Dispersive table(std::vector<double> freq_hz,
                          std::vector<double> value,
                          RangePolicy policy = RangePolicy::strict);

  double at(double freq_hz) const;
  // same property with every value multiplied by a positive factor
  Dispersive scaled(double factor) const;
  bool is_constant() const { return freq_hz_.empty(); }
  const std::vector<double>& tabulated_frequencies() const { return freq_hz_; }

 private:
  double value_ = 0.0;               // constant form
  std::vector<double> freq_hz_;      // tabulated form (log f)
  std::vector<double> log_value_;
  std::vector<double> log_freq_;
  RangePolicy policy_ = RangePolicy::strict;
};

// One material slab of the screen-finger stack.
struct DielectricLayer {
  std::string name;
  double thickness_m = 0.0;
  Dispersive rel_permittivity = Dispersive::constant(1.0);  // eps'_r(f)
  Dispersive conductivity_s_per_m = Dispersive::constant(0.0);
  double elastic_modulus_pa = 0.0;
  double poisson = 0.0;
};

// The air gap separating the two slabs.
struct GapMedium {
  double rel_permittivity = 1.00059;
  double conductivity_s_per_m = 1e-14;
};

// Absolute complex permittivity eps' - j*eps'' at one angular frequency, F/m.
struct ComplexPermittivity {
  double real_f_per_m = 0.0;  // eps0 * eps'_r(omega)
  double imag_f_per_m = 0.0;  // sigma(omega) / omega
};

// eps = eps0*eps'_r(w) - j*sigma(w)/w (absolute convention).
ComplexPermittivity complex_permittivity_at(const DielectricLayer& layer,
                                            double omega_rad_s);

// tan(delta) = eps''/eps'.
double loss_tangent_at(const DielectricLayer& layer, double omega_rad_s);

// tau = eps/sigma evaluated at omega; requires sigma > 0.
double relaxation_time(const DielectricLayer& layer, double omega_rad_s);

// Frequency-dependent permittivity and conductivity loaded from a dispersion
// CSV with header freq_hz,eps_r,sigma_s_per_m (rows sorted ascending).
struct LayerDispersion {
  Dispersive eps_r;
  Dispersive sigma_s_per_m;
  double f_min_hz = 0.0;
  double f_max_hz = 0.0;
};

LayerDispersion load_layer_dispersion(const std::string& path,
                                      RangePolicy policy = RangePolicy::strict);

}  // namespace ea
