#include "ea/persson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ea/constants.hpp"
#include "ea/errors.hpp"
#include "ea/log.hpp"
#include "ea/quadrature.hpp"

namespace ea {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_spec(const RoughnessSpec& s) {
  if (!(s.h_rms_m > 0.0)) fail(ErrorCode::domain, "roughness: h_rms must be > 0");
  if (!(s.hurst > 0.0 && s.hurst < 1.0))
    fail(ErrorCode::domain, "roughness: Hurst exponent must lie in (0, 1)");
  if (!(s.q_l > 0.0 && s.q_l <= s.q_0 && s.q_0 < s.q_1))
    fail(ErrorCode::domain, "roughness: need 0 < q_l <= q_0 < q_1");
}

// integrand of the universal separation function:
// [gamma + 3(1-gamma) erf(x)^2] exp(-x^2) / x
double phi_integrand(double x) {
  const double e = std::erf(x);
  return (persson_gamma + 3.0 * (1.0 - persson_gamma) * e * e) *
         std::exp(-x * x) / x;
}

double simpson4(double a, double b) {
  const double h = 0.25 * (b - a);
  return h / 3.0 *
         (phi_integrand(a) + 4.0 * phi_integrand(a + h) +
          2.0 * phi_integrand(a + 2.0 * h) + 4.0 * phi_integrand(a + 3.0 * h) +
          phi_integrand(b));
}

// Phi(x0) tabulated once on a log grid. Below the table the integrand is
// gamma/x to within O(x^2), so Phi continues as Phi(xmin) + gamma*ln(xmin/x0);
// above x = 20 the integral is < 1e-170 and is treated as zero.
struct PhiTable {
  static constexpr double x_min = 1e-8;
  static constexpr double x_max = 20.0;
  static constexpr std::size_t n = 4000;
  std::vector<double> value;
  double ln_min = 0.0, dln = 0.0;

  PhiTable() {
    value.assign(n, 0.0);
    ln_min = std::log(x_min);
    dln = (std::log(x_max) - ln_min) / static_cast<double>(n - 1);
    double x_hi = x_max;
    for (std::size_t k = n - 1; k-- > 0;) {
      const double x_lo = std::exp(ln_min + dln * static_cast<double>(k));
      value[k] = value[k + 1] + simpson4(x_lo, x_hi);
      x_hi = x_lo;
    }
  }

  double operator()(double x0) const {
    if (!(x0 > 0.0)) fail(ErrorCode::domain, "Phi: argument must be > 0");
    if (x0 >= x_max) return 0.0;
    if (x0 <= x_min) return value.front() + persson_gamma * std::log(x_min / x0);
    const double t = (std::log(x0) - ln_min) / dln;
    const auto k = static_cast<std::size_t>(t);
    const double frac = t - static_cast<double>(k);
    return value[k] + frac * (value[k + 1] - value[k]);
  }
};

const PhiTable& phi_table() {
  static const PhiTable table;
  return table;
}

double normal_pair(double u, double u1, double h) {
  // Gaussian reflected at u = 0; integrates to exactly 1 over u > 0 for any
  // center, which keeps the distribution normalization tied to the contact
  // area alone.
  const double inv = 1.0 / (h * std::sqrt(2.0 * pi));
  const double da = (u - u1) / h, db = (u + u1) / h;
  return inv * (std::exp(-0.5 * da * da) + std::exp(-0.5 * db * db));
}

}  // namespace

double power_spectrum(const RoughnessSpec& spec, double q) {
  check_spec(spec);
  const double q_low = spec.rolloff_plateau ? spec.q_l : spec.q_0;
  if (!(q >= q_low && q <= spec.q_1))
    fail(ErrorCode::domain, "power_spectrum: wavevector outside spectrum support");
  const double c0 = spec.hurst * spec.h_rms_m * spec.h_rms_m /
                    (pi * spec.q_0 * spec.q_0);
  if (q < spec.q_0) return c0;  // roll-off plateau
  return c0 * std::pow(q / spec.q_0, -2.0 * (1.0 + spec.hurst));
}

ElasticPair ElasticPair::from_layers(const DielectricLayer& a,
                                     const DielectricLayer& b,
                                     double freq_hz) {
  if (!(a.elastic_modulus_pa > 0.0) || !(b.elastic_modulus_pa > 0.0))
    fail(ErrorCode::domain, "elastic pair: moduli must be > 0");
  ElasticPair p;
  p.y_eff_pa = 1.0 / ((1.0 - a.poisson * a.poisson) / a.elastic_modulus_pa +
                      (1.0 - b.poisson * b.poisson) / b.elastic_modulus_pa);
  const double sa = a.conductivity_s_per_m.at(freq_hz);
  const double sb = b.conductivity_s_per_m.at(freq_hz);
  // a perfectly insulating side blocks the series conduction path entirely
  p.sigma_eff_s_per_m = (sa > 0.0 && sb > 0.0) ? 1.0 / (1.0 / sa + 1.0 / sb) : 0.0;
  return p;
}

double area_ratio(double p_pa, double g_pa2) {
  if (p_pa < 0.0) fail(ErrorCode::domain, "area_ratio: pressure must be >= 0");
  if (g_pa2 < 0.0) fail(ErrorCode::domain, "area_ratio: variance must be >= 0");
  if (g_pa2 == 0.0) return p_pa > 0.0 ? 1.0 : 0.0;
  return std::erf(p_pa / (2.0 * std::sqrt(g_pa2)));
}

PerssonKernel::PerssonKernel(const RoughnessSpec& spec, double y_eff_pa,
                             const PerssonOptions& opt)
    : spec_(spec), y_eff_(y_eff_pa), opt_(opt) {
  check_spec(spec_);
  if (!(y_eff_ > 0.0)) fail(ErrorCode::domain, "persson: Y* must be > 0");
  if (opt_.q_points_per_decade < 8 || opt_.u_nodes < 16)
    fail(ErrorCode::domain, "persson: grid options too coarse");

  const double decades = std::log10(spec_.q_1 / spec_.q_0);
  auto build = [&](int per_decade, std::vector<double>& q,
                   std::vector<double>& s1, std::vector<double>& s3) {
    const auto n = static_cast<std::size_t>(
                       std::ceil(per_decade * decades)) + 1;
    q = logspace(spec_.q_0, spec_.q_1, n);
    s1.assign(n, 0.0);
    s3.assign(n, 0.0);
    double f1p = q[0] * power_spectrum(spec_, q[0]);
    double f3p = f1p * q[0] * q[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double c = power_spectrum(spec_, q[i]);
      const double f1 = q[i] * c;
      const double f3 = f1 * q[i] * q[i];
      const double h = 0.5 * (q[i] - q[i - 1]);
      s1[i] = s1[i - 1] + h * (f1 + f1p);
      s3[i] = s3[i - 1] + h * (f3 + f3p);
      f1p = f1;
      f3p = f3;
    }
  };

  build(opt_.q_points_per_decade, q_, s1_, s3_);
  // one-step refinement check on the prefix totals; adopt the finer grid if
  // the coarse one has not converged, and give up after a second failure
  for (int attempt = 0;; ++attempt) {
    std::vector<double> qr, s1r, s3r;
    const int per = opt_.q_points_per_decade << (attempt + 1);
    build(per, qr, s1r, s3r);
    const double d1 = std::abs(s1r.back() - s1_.back()) /
                      std::max(s1r.back(), 1e-300);
    const double d3 = std::abs(s3r.back() - s3_.back()) /
                      std::max(s3r.back(), 1e-300);
    if (d1 <= opt_.refine_rel_tol && d3 <= opt_.refine_rel_tol) break;
    log::info("persson: refining wavevector grid to " + std::to_string(per) +
              " points per decade");
    q_ = std::move(qr);
    s1_ = std::move(s1r);
    s3_ = std::move(s3r);
    if (attempt >= 1)
      fail(ErrorCode::convergence,
           "persson: spectrum prefix integrals did not converge under refinement");
  }

  // magnification grid: every stride-th wavevector node, so the moment
  // integrals below never need interpolated lower limits
  int stride = 1;
  if (opt_.zeta_points_per_decade > 0 &&
      opt_.zeta_points_per_decade < opt_.q_points_per_decade)
    stride = std::max(1, opt_.q_points_per_decade / opt_.zeta_points_per_decade);
  zeta_.clear();
  zidx_.clear();
  for (std::size_t i = 0; i < q_.size(); i += static_cast<std::size_t>(stride)) {
    zeta_.push_back(q_[i] / spec_.q_0);
    zidx_.push_back(i);
  }
  if (zidx_.back() != q_.size() - 1) {
    zeta_.push_back(q_.back() / spec_.q_0);
    zidx_.push_back(q_.size() - 1);
  }
}

double PerssonKernel::prefix_s1(double q) const {
  const auto it = std::lower_bound(q_.begin(), q_.end(), q);
  const auto i = static_cast<std::size_t>(it - q_.begin());
  if (it != q_.end() && *it == q) return s1_[i];
  const double qk = q_[i - 1];
  return s1_[i - 1] + 0.5 * (q - qk) * (qk * power_spectrum(spec_, qk) +
                                        q * power_spectrum(spec_, q));
}

double PerssonKernel::prefix_s3(double q) const {
  const auto it = std::lower_bound(q_.begin(), q_.end(), q);
  const auto i = static_cast<std::size_t>(it - q_.begin());
  if (it != q_.end() && *it == q) return s3_[i];
  const double qk = q_[i - 1];
  const double f3k = qk * qk * qk * power_spectrum(spec_, qk);
  const double f3q = q * q * q * power_spectrum(spec_, q);
  return s3_[i - 1] + 0.5 * (q - qk) * (f3k + f3q);
}

double PerssonKernel::magnification_variance(double zeta) const {
  const double zmax = spec_.q_1 / spec_.q_0;
  if (!(zeta >= 1.0 && zeta <= zmax * (1.0 + 1e-12)))
    fail(ErrorCode::domain, "magnification must lie in [1, q_1/q_0]");
  const double q = std::min(zeta * spec_.q_0, spec_.q_1);
  return 0.25 * pi * y_eff_ * y_eff_ * prefix_s3(q);
}

SeparationDistribution PerssonKernel::distribution(double p_pa) const {
  if (p_pa < 0.0) fail(ErrorCode::domain, "distribution: pressure must be >= 0");
  SeparationDistribution out;
  out.pressure_pa = p_pa;
  if (p_pa == 0.0) {
    out.no_contact = true;
    out.mean_separation_m = std::numeric_limits<double>::infinity();
    return out;
  }

  const auto& phi = phi_table();
  const double g_pref = 0.25 * pi * y_eff_ * y_eff_;
  const std::size_t nq = q_.size();
  const std::size_t nz = zeta_.size();
  const double s1_tot = s1_.back();

  // per-magnification state
  const std::vector<std::size_t>& idx = zidx_;
  std::vector<double> a_rel(nz), h2(nz), ubar(nz), u1(nz);
  const bool par = opt_.parallel;
#pragma omp parallel for schedule(static) if (par)
  for (long sj = 0; sj < static_cast<long>(nz); ++sj) {
    const auto j = static_cast<std::size_t>(sj);
    const std::size_t i0 = idx[j];
    a_rel[j] = area_ratio(p_pa, g_pref * s3_[i0]);
    h2[j] = std::max(0.0, 2.0 * pi * (s1_tot - s1_[i0]));
    const double s = p_pa / (a_rel[j] * y_eff_);  // w * s is Phi's argument

    // mean separation carried by roughness above this magnification:
    // sqrt(pi) * Int dq q^2 C(q) w(q) Phi(w(q) s), w = (pi (S3(q)-S3(z q0)))^-1/2
    double acc = 0.0;
    double prev = 0.0;  // integrand vanishes at the lower limit
    for (std::size_t i = i0 + 1; i < nq; ++i) {
      const double ds3 = s3_[i] - s3_[i0];
      double f = 0.0;
      if (ds3 > 0.0) {
        const double w = 1.0 / std::sqrt(pi * ds3);
        const double x0 = w * s;
        if (x0 < PhiTable::x_max)
          f = q_[i] * q_[i] * power_spectrum(spec_, q_[i]) * w * phi(x0);
      }
      if (i == i0 + 1) {
        // first panel: w ~ (q - q0)^{-1/2} diverges, so integrate in
        // v = sqrt(q - q0) where the integrand is smooth
        const double f3 = q_[i0] * q_[i0] * q_[i0] *
                          power_spectrum(spec_, q_[i0]);
        if (f3 > 0.0) {
          const double vb = std::sqrt(q_[i] - q_[i0]);
          auto g = [&](double v) {
            const double qv = q_[i0] + v * v;
            const double wv = 1.0 / std::sqrt(pi * f3 * v * v);
            const double x0 = wv * s;
            if (x0 >= PhiTable::x_max) return 0.0;
            return 2.0 * v * qv * qv * power_spectrum(spec_, qv) * wv * phi(x0);
          };
          const double h = 0.25 * vb;
          acc += h / 3.0 *
                 (g(1e-12 * vb) + 4.0 * g(h) + 2.0 * g(2.0 * h) +
                  4.0 * g(3.0 * h) + g(vb));
        }
      } else {
        acc += 0.5 * (q_[i] - q_[i - 1]) * (f + prev);
      }
      prev = f;
    }
    ubar[j] = std::sqrt(pi) * acc;
  }

  // u1 = ubar + ubar' A / A'; the differentiation variable cancels in the
  // ratio, so plain index-space differences are enough
  for (std::size_t j = 0; j < nz; ++j) {
    const std::size_t lo = j == 0 ? 0 : j - 1;
    const std::size_t hi = j + 1 == nz ? j : j + 1;
    const double da = a_rel[hi] - a_rel[lo];
    const double du = ubar[hi] - ubar[lo];
    u1[j] = std::abs(da) < 1e-30 ? ubar[j] : ubar[j] + du / da * a_rel[j];
  }

  out.u_m = logspace(opt_.u_min_m, opt_.u_max_over_hrms * spec_.h_rms_m,
                     opt_.u_nodes);
  out.density.assign(out.u_m.size(), 0.0);
  const double h_floor = 1e-2 * opt_.u_min_m;

#pragma omp parallel for schedule(static) if (par)
  for (long sk = 0; sk < static_cast<long>(out.u_m.size()); ++sk) {
    const auto k = static_cast<std::size_t>(sk);
    const double u = out.u_m[k];
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < nz; ++j) {
      const double w_seg = a_rel[j] - a_rel[j + 1];
      if (w_seg == 0.0) continue;
      const double ga = h2[j] > 0.0
                            ? normal_pair(u, u1[j],
                                          std::max(std::sqrt(h2[j]), h_floor))
                            : 0.0;
      const double gb = h2[j + 1] > 0.0
                            ? normal_pair(u, u1[j + 1],
                                          std::max(std::sqrt(h2[j + 1]), h_floor))
                            : 0.0;
      acc += w_seg * 0.5 * (ga + gb);
    }
    out.density[k] = acc;
  }

  out.area_ratio = a_rel.back();
  out.mean_separation_m = ubar.front();
  return out;
}

double magnification_variance(const RoughnessSpec& spec, const ElasticPair& pair,
                              double zeta, const PerssonOptions& opt) {
  return PerssonKernel(spec, pair.y_eff_pa, opt).magnification_variance(zeta);
}

double area_ratio(const RoughnessSpec& spec, const ElasticPair& pair,
                  double p_pa, double zeta, const PerssonOptions& opt) {
  PerssonKernel kernel(spec, pair.y_eff_pa, opt);
  return area_ratio(p_pa, kernel.magnification_variance(zeta));
}

SeparationDistribution separation_distribution(const RoughnessSpec& spec,
                                               const ElasticPair& pair,
                                               double p_pa,
                                               const PerssonOptions& opt) {
  return PerssonKernel(spec, pair.y_eff_pa, opt).distribution(p_pa);
}

double characteristic_length_r(double hurst) {
  if (!(hurst >= 0.05 && hurst <= 0.999))
    fail(ErrorCode::domain,
         "characteristic length: Hurst exponent outside [0.05, 0.999]");
  const double beta = 1.0 / (2.0 * (1.0 - hurst));
  // Int_0^inf (1+t^2)^{-beta} dt with t = sinh(v); the integrand becomes
  // cosh(v)^{1-2beta}, which decays like exp(-(2beta-1) v)
  const double decay = 2.0 * beta - 1.0;
  const double v_max = 37.0 / decay + std::log(2.0);
  auto f = [beta](double v) {
    return std::pow(std::cosh(v), 1.0 - 2.0 * beta);
  };
  const double integral =
      adaptive_simpson(f, 0.0, v_max, 1e-11 * std::max(1.0, v_max));
  return hurst / (2.0 * (1.0 - hurst)) * 2.0 * integral;
}

double characteristic_length(const RoughnessSpec& spec) {
  check_spec(spec);
  const double h = spec.hurst;
  const double r = characteristic_length_r(h);
  return std::sqrt(2.0 * (1.0 - h) / (pi * h)) * spec.h_rms_m *
         (r - std::pow(spec.q_0 / spec.q_1, h));
}

double contact_conductivity(const ElasticPair& pair, double p_pa, double l0_m) {
  if (p_pa < 0.0)
    fail(ErrorCode::domain, "contact conductivity: pressure must be >= 0");
  if (!(l0_m > 0.0) || !(pair.y_eff_pa > 0.0))
    fail(ErrorCode::domain, "contact conductivity: need L0 > 0 and Y* > 0");
  return 2.0 * pair.sigma_eff_s_per_m * p_pa / (pair.y_eff_pa * l0_m);
}

}  // namespace ea
