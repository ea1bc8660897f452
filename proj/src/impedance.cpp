#include "ea/impedance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ea/csv.hpp"
#include "ea/errors.hpp"
#include "ea/interp.hpp"

namespace ea {

namespace {

constexpr double two_pi = 6.28318530717958647692;
constexpr double band_cap_hz = 100e3;  // skin/screen dominate above this

void check_monotone(const std::vector<double>& f) {
  if (f.size() < 2)
    fail(ErrorCode::validation, "impedance sweep needs at least 2 records");
  for (std::size_t i = 1; i < f.size(); ++i)
    if (!(f[i] > f[i - 1]))
      fail(ErrorCode::validation,
           "impedance sweep frequencies must be strictly increasing");
  if (!(f.front() > 0.0))
    fail(ErrorCode::validation, "impedance sweep frequencies must be > 0");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

SweepCondition sweep_condition_from_name(const std::string& name) {
  if (name == "skin") return SweepCondition::skin;
  if (name == "touchscreen") return SweepCondition::touchscreen;
  if (name == "total_sliding") return SweepCondition::total_sliding;
  if (name == "total_stationary") return SweepCondition::total_stationary;
  fail(ErrorCode::validation, "unknown sweep condition '" + name + "'");
}

DcOffset dc_offset_from_name(const std::string& name) {
  if (name == "none") return DcOffset::none;
  if (name == "positive_dc") return DcOffset::positive_dc;
  if (name == "negative_dc") return DcOffset::negative_dc;
  fail(ErrorCode::validation, "unknown DC offset label '" + name + "'");
}

ImpedanceSweep make_sweep(std::vector<double> freq_hz,
                          std::vector<std::complex<double>> z_ohm,
                          SweepCondition condition, DcOffset offset) {
  if (freq_hz.size() != z_ohm.size())
    fail(ErrorCode::validation, "sweep frequency/impedance size mismatch");
  check_monotone(freq_hz);
  ImpedanceSweep s;
  s.freq_hz = std::move(freq_hz);
  s.z_ohm = std::move(z_ohm);
  s.condition = condition;
  s.offset = offset;
  return s;
}

ImpedanceSweep load_sweep(const std::string& path, SweepCondition condition,
                          DcOffset offset) {
  const NumericTable t =
      read_numeric_csv(path, {"freq_hz", "z_real_ohm", "z_imag_ohm"});
  std::vector<double> f;
  std::vector<std::complex<double>> z;
  f.reserve(t.rows.size());
  z.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    f.push_back(row[0]);
    z.emplace_back(row[1], row[2]);
  }
  ImpedanceSweep s = make_sweep(std::move(f), std::move(z), condition, offset);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::abs(s.z_ohm[i]) == 0.0)
      fail(ErrorCode::validation,
           "measured sweep '" + path + "' has |Z| = 0 at " +
               format_g9(s.freq_hz[i]) + " Hz");
  return s;
}

void write_sweep_csv(const ImpedanceSweep& sweep, const std::string& path) {
  CsvWriter w;
  w.header({"freq_hz", "z_real_ohm", "z_imag_ohm"});
  for (std::size_t i = 0; i < sweep.size(); ++i)
    w.row({sweep.freq_hz[i], sweep.z_ohm[i].real(), sweep.z_ohm[i].imag()});
  w.write_atomic(path);
}

ImpedanceSweep resample_to(const ImpedanceSweep& sweep,
                           const std::vector<double>& grid_hz) {
  check_monotone(sweep.freq_hz);
  std::vector<double> lf(sweep.size()), re(sweep.size()), im(sweep.size());
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    lf[i] = std::log(sweep.freq_hz[i]);
    re[i] = sweep.z_ohm[i].real();
    im[i] = sweep.z_ohm[i].imag();
  }
  ImpedanceSweep out;
  out.condition = sweep.condition;
  out.offset = sweep.offset;
  out.area_m2 = sweep.area_m2;
  out.freq_hz = grid_hz;
  out.z_ohm.reserve(grid_hz.size());
  for (double f : grid_hz) {
    const double q = std::log(f);
    out.z_ohm.emplace_back(
        detail::piecewise_linear(lf, re, q, RangePolicy::strict),
        detail::piecewise_linear(lf, im, q, RangePolicy::strict));
  }
  return out;
}

std::vector<double> common_grid(
    const std::vector<const ImpedanceSweep*>& sweeps) {
  if (sweeps.empty()) fail(ErrorCode::validation, "no sweeps to align");
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  for (const ImpedanceSweep* s : sweeps) {
    check_monotone(s->freq_hz);
    lo = std::max(lo, s->freq_hz.front());
    hi = std::min(hi, s->freq_hz.back());
  }
  if (!(lo <= hi))
    fail(ErrorCode::validation,
         "sweeps have disjoint frequency ranges; nothing to align");
  std::vector<double> grid;
  for (double f : sweeps.front()->freq_hz)
    if (f >= lo && f <= hi) grid.push_back(f);
  if (grid.size() < 2)
    fail(ErrorCode::validation,
         "fewer than 2 shared frequencies after alignment");
  return grid;
}

ImpedanceSweep remaining_impedance(const ImpedanceSweep& total,
                                   const ImpedanceSweep& skin,
                                   const ImpedanceSweep& screen) {
  const std::vector<double> grid = common_grid({&total, &skin, &screen});
  const ImpedanceSweep t = resample_to(total, grid);
  const ImpedanceSweep s = resample_to(skin, grid);
  const ImpedanceSweep c = resample_to(screen, grid);
  ImpedanceSweep out = t;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.z_ohm[i] = t.z_ohm[i] - s.z_ohm[i] - c.z_ohm[i];
  return out;
}

GapEstimate gap_capacitance(const ImpedanceSweep& remaining, double f_min_hz) {
  if (!(f_min_hz > 0.0))
    fail(ErrorCode::domain, "gap capacitance: f_min must be > 0");
  std::vector<double> c, lx, ly;
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    const double f = remaining.freq_hz[i];
    if (f < f_min_hz || f > band_cap_hz) continue;
    const double zmag = std::abs(remaining.z_ohm[i]);
    if (zmag == 0.0)
      fail(ErrorCode::domain,
           "gap capacitance: zero impedance at " + format_g9(f) + " Hz");
    const double y = 1.0 / zmag;
    c.push_back(y / (two_pi * f));
    lx.push_back(std::log10(f));
    ly.push_back(std::log10(y));
  }
  if (c.size() < 3)
    fail(ErrorCode::validation,
         "gap capacitance: fewer than 3 records in the capacitive band");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(ly.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }

  GapEstimate est;
  est.c_gap_f = median(c);
  est.admittance_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  est.non_capacitive_warning = std::abs(est.admittance_slope - 1.0) > 0.15;
  return est;
}

double gap_thickness(const GapEstimate& est) {
  if (!(est.c_gap_f > 0.0))
    fail(ErrorCode::domain, "gap thickness: capacitance must be > 0");
  if (!(est.a_app_m2 > 0.0))
    fail(ErrorCode::domain, "gap thickness: apparent area must be > 0");
  if (!(est.eps_gap > 0.0))
    fail(ErrorCode::domain, "gap thickness: gap permittivity must be > 0");
  return eps0_f_per_m * est.eps_gap * est.a_app_m2 / est.c_gap_f;
}

RemainingModel fit_polarization(const ImpedanceSweep& remaining, double c_gap_f,
                                double f_corner_hz) {
  if (c_gap_f < 0.0)
    fail(ErrorCode::domain, "polarization fit: C_gap must be >= 0");
  double sum_g = 0.0, sum_wi = 0.0, sum_w2 = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    const double f = remaining.freq_hz[i];
    if (f >= f_corner_hz) continue;
    const std::complex<double> z = remaining.z_ohm[i];
    if (std::abs(z) == 0.0)
      fail(ErrorCode::domain,
           "polarization fit: zero impedance at " + format_g9(f) + " Hz");
    const std::complex<double> y = 1.0 / z;
    const double w = two_pi * f;
    sum_g += y.real();
    sum_wi += w * y.imag();
    sum_w2 += w * w;
    ++n;
  }
  if (n < 3)
    fail(ErrorCode::validation,
         "polarization fit: fewer than 3 records below the capacitive corner");

  RemainingModel m;
  m.c_gap_f = c_gap_f;
  const double g = std::max(0.0, sum_g / static_cast<double>(n));
  const double c_tot = sum_w2 > 0.0 ? sum_wi / sum_w2 : 0.0;
  m.c_ep_f = std::max(0.0, c_tot - c_gap_f);
  if (g <= 0.0) {
    m.polarization_absent = true;
    m.r_ep_ohm = std::numeric_limits<double>::infinity();
  } else {
    m.r_ep_ohm = 1.0 / g;
  }
  return m;
}

std::vector<GapForcePoint> gap_voltage_and_force(
    const ImpedanceSweep& total, const ImpedanceSweep& skin,
    const ImpedanceSweep& screen, const RemainingModel& model, double v0,
    double a_app_m2, double u_m, bool use_implicit) {
  if (v0 < 0.0) fail(ErrorCode::domain, "gap force: V0 must be >= 0");
  if (!(u_m > 0.0)) fail(ErrorCode::domain, "gap force: u must be > 0");
  if (!(a_app_m2 > 0.0)) fail(ErrorCode::domain, "gap force: area must be > 0");

  const std::vector<double> grid = common_grid({&total, &skin, &screen});
  const ImpedanceSweep t = resample_to(total, grid);
  const ImpedanceSweep s = resample_to(skin, grid);
  const ImpedanceSweep c = resample_to(screen, grid);

  const double r_ep = model.polarization_absent ? 0.0 : model.r_ep_ohm;
  const double c_sum = model.c_gap_f + model.c_ep_f;
  const double force_scale = 0.5 * eps0_f_per_m * a_app_m2 / (u_m * u_m);

  std::vector<GapForcePoint> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = two_pi * grid[i];
    if (std::abs(t.z_ohm[i]) == 0.0)
      fail(ErrorCode::domain, "gap force: |Z_total| = 0 at " +
                                  format_g9(grid[i]) + " Hz");
    const std::complex<double> v{v0, 0.0};
    const std::complex<double> current = v / t.z_ohm[i];
    const std::complex<double> v1 = v - c.z_ohm[i] * current;
    const std::complex<double> v2 = s.z_ohm[i] * current;
    const std::complex<double> dv = v1 - v2;

    GapForcePoint pt;
    pt.freq_hz = grid[i];
    pt.dv_v = dv;
    const std::complex<double> jwc{0.0, w * c_sum};
    pt.dv_gap_v = dv - r_ep * (current - jwc * dv);
    pt.dv_gap_implicit_v = (dv - r_ep * current) /
                           (std::complex<double>{1.0, 0.0} -
                            std::complex<double>{0.0, w * r_ep * c_sum});
    const double mag = std::abs(use_implicit ? pt.dv_gap_implicit_v
                                             : pt.dv_gap_v);
    pt.fe_n = force_scale * mag * mag;
    pt.fe_nopol_n = force_scale * std::norm(dv);
    const double a = std::abs(pt.dv_gap_v);
    const double b = std::abs(pt.dv_gap_implicit_v);
    pt.implicit_differs =
        std::abs(a - b) > 1e-3 * std::max({a, b, 1e-300});
    out.push_back(pt);
  }
  return out;
}

std::vector<ContributionRow> contribution_metrics(
    const ImpedanceSweep& total,
    const std::vector<std::pair<std::string, ImpedanceSweep>>& parts) {
  std::vector<const ImpedanceSweep*> all{&total};
  for (const auto& [name, sweep] : parts) all.push_back(&sweep);
  const std::vector<double> grid = common_grid(all);
  const ImpedanceSweep t = resample_to(total, grid);

  std::vector<ContributionRow> out;
  for (const auto& [name, sweep] : parts) {
    const ImpedanceSweep p = resample_to(sweep, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double zt = std::abs(t.z_ohm[i]);
      if (zt == 0.0)
        fail(ErrorCode::domain, "contribution metrics: |Z_total| = 0 at " +
                                    format_g9(grid[i]) + " Hz");
      ContributionRow row;
      row.freq_hz = grid[i];
      row.part = name;
      row.mr = std::abs(p.z_ohm[i]) / zt;
      const double phi_t = std::atan2(t.z_ohm[i].imag(), t.z_ohm[i].real());
      const double phi_p = std::atan2(p.z_ohm[i].imag(), p.z_ohm[i].real());
      if (phi_t == 0.0) {
        row.pps_undefined = true;
      } else {
        row.pps = (1.0 - std::abs(phi_p - phi_t) / std::abs(phi_t)) * 100.0;
      }
      out.push_back(row);
    }
  }
  return out;
}

ImpedanceSweep normalize_by_area(const ImpedanceSweep& sweep,
                                 double from_area_m2, double to_area_m2) {
  if (!(from_area_m2 > 0.0) || !(to_area_m2 > 0.0))
    fail(ErrorCode::domain, "area normalization: areas must be > 0");
  ImpedanceSweep out = sweep;
  const double k = from_area_m2 / to_area_m2;
  for (auto& z : out.z_ohm) z *= k;
  return out;
}

}  // namespace ea
