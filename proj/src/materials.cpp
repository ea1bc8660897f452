#include "ea/materials.hpp"

#include <cmath>
#include <numbers>

#include "ea/constants.hpp"
#include "ea/csv.hpp"
#include "ea/errors.hpp"

namespace ea {

Dispersive Dispersive::constant(double value) {
  Dispersive d;
  d.value_ = value;
  return d;
}

Dispersive Dispersive::table(std::vector<double> freq_hz,
                             std::vector<double> value, RangePolicy policy) {
  if (freq_hz.size() != value.size() || freq_hz.size() < 2)
    fail(ErrorCode::validation, "property table needs >= 2 matched rows");
  for (std::size_t i = 0; i < freq_hz.size(); ++i) {
    if (!(freq_hz[i] > 0.0))
      fail(ErrorCode::validation, "property table frequencies must be > 0");
    if (i > 0 && !(freq_hz[i] > freq_hz[i - 1]))
      fail(ErrorCode::validation,
           "property table frequencies must be strictly increasing");
    if (!(value[i] > 0.0))
      fail(ErrorCode::validation,
           "log-log interpolation requires positive table values");
  }
  Dispersive d;
  d.freq_hz_ = std::move(freq_hz);
  d.log_freq_.resize(d.freq_hz_.size());
  d.log_value_.resize(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    d.log_freq_[i] = std::log(d.freq_hz_[i]);
    d.log_value_[i] = std::log(value[i]);
  }
  d.policy_ = policy;
  return d;
}

Dispersive Dispersive::scaled(double factor) const {
  if (!(factor > 0.0))
    fail(ErrorCode::domain, "property scaling factor must be > 0");
  Dispersive d = *this;
  if (d.is_constant()) {
    d.value_ *= factor;
    return d;
  }
  const double shift = std::log(factor);
  for (double& lv : d.log_value_) lv += shift;
  return d;
}

double Dispersive::at(double freq_hz) const {
  if (is_constant()) return value_;
  if (!(freq_hz > 0.0))
    fail(ErrorCode::domain, "tabulated property queried at non-positive f");
  return std::exp(detail::piecewise_linear(log_freq_, log_value_,
                                           std::log(freq_hz), policy_));
}

ComplexPermittivity complex_permittivity_at(const DielectricLayer& layer,
                                            double omega_rad_s) {
  if (!(omega_rad_s > 0.0))
    fail(ErrorCode::domain, "complex permittivity requires omega > 0");
  const double f = omega_rad_s / (2.0 * std::numbers::pi);
  const double eps_r = layer.rel_permittivity.at(f);
  const double sigma = layer.conductivity_s_per_m.at(f);
  if (!(eps_r > 0.0))
    fail(ErrorCode::domain, "relative permittivity must be positive");
  if (sigma < 0.0) fail(ErrorCode::domain, "conductivity must be >= 0");
  return {eps0_f_per_m * eps_r, sigma / omega_rad_s};
}

double loss_tangent_at(const DielectricLayer& layer, double omega_rad_s) {
  const ComplexPermittivity eps = complex_permittivity_at(layer, omega_rad_s);
  if (!(eps.real_f_per_m > 0.0))
    fail(ErrorCode::domain, "loss tangent undefined for eps' = 0");
  return eps.imag_f_per_m / eps.real_f_per_m;
}

double relaxation_time(const DielectricLayer& layer, double omega_rad_s) {
  const ComplexPermittivity eps = complex_permittivity_at(layer, omega_rad_s);
  const double f = omega_rad_s / (2.0 * std::numbers::pi);
  const double sigma = layer.conductivity_s_per_m.at(f);
  if (!(sigma > 0.0))
    fail(ErrorCode::domain,
         "relaxation time is infinite for a non-conducting layer");
  return eps.real_f_per_m / sigma;
}

LayerDispersion load_layer_dispersion(const std::string& path,
                                      RangePolicy policy) {
  const NumericTable t =
      read_numeric_csv(path, {"freq_hz", "eps_r", "sigma_s_per_m"});
  if (t.rows.size() < 2)
    fail(ErrorCode::validation, path + ": need >= 2 dispersion rows");
  std::vector<double> f, eps, sig;
  f.reserve(t.rows.size());
  eps.reserve(t.rows.size());
  sig.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    f.push_back(row[0]);
    eps.push_back(row[1]);
    sig.push_back(row[2]);
  }
  LayerDispersion d;
  d.eps_r = Dispersive::table(f, eps, policy);
  d.sigma_s_per_m = Dispersive::table(f, sig, policy);
  d.f_min_hz = f.front();
  d.f_max_hz = f.back();
  return d;
}

}  // namespace ea
