// Regenerates the synthetic datasets under data/.  Everything here is
// computed from small closed-form circuit / wetting models so the expected
// recovery values in the tests are known exactly.
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "ea/csv.hpp"
#include "ea/quadrature.hpp"

namespace {

using std::complex;
const complex<double> j{0.0, 1.0};

// Reference circuit for the impedance pipeline fixtures.
const double kSkinR = 100e3;    // ohm
const double kSkinC = 10e-9;    // farad
const double kScreenR = 2e3;    // ohm
const double kScreenC = 300e-9; // farad
const double kRep = 50e6;       // ohm, electrode polarization resistance
const double kCep = 2e-12;      // farad, electrode polarization capacitance
const double kCgap = 413e-12;   // farad, air-gap capacitance

complex<double> z_skin(double w) {
  return kSkinR / (1.0 + j * w * kSkinR * kSkinC);
}

complex<double> z_screen(double w) { return kScreenR + 1.0 / (j * w * kScreenC); }

// Remaining branch: R_EP in parallel with (C_gap + C_EP).
complex<double> z_remaining(double w) {
  return 1.0 / (1.0 / kRep + j * w * (kCgap + kCep));
}

void write_sweep(const std::string& path,
                 const std::vector<double>& f,
                 complex<double> (*z)(double)) {
  ea::CsvWriter w;
  w.header({"freq_hz", "z_real_ohm", "z_imag_ohm"});
  for (double fi : f) {
    const complex<double> zi = z(2.0 * M_PI * fi);
    w.row({fi, zi.real(), zi.imag()});
  }
  w.write_atomic(path);
}

complex<double> z_total(double w) {
  return z_skin(w) + z_screen(w) + z_remaining(w);
}

// Demo surface for the contact-angle fixture; the solver should give these
// numbers back.
const double kSurfLw = 35.0;   // mJ/m^2
const double kSurfPlus = 0.5;  // mJ/m^2
const double kSurfMinus = 12.0;

struct Liquid {
  const char* name;
  double lw, plus, minus, total;
};

// Standard probe liquid set (van Oss / Good / Chaudhury convention,
// gamma^+ = gamma^- = 25.5 for water).
const Liquid kLiquids[] = {
    {"water", 21.8, 25.5, 25.5, 72.8},
    {"glycerol", 34.0, 3.92, 57.4, 64.0},
    {"ethylene_glycol", 29.0, 1.92, 47.0, 47.99},
    {"formamide", 39.0, 2.28, 39.6, 58.0},
};

double demo_angle_deg(const Liquid& l) {
  const double work = 2.0 * (std::sqrt(l.lw * kSurfLw) +
                             std::sqrt(l.plus * kSurfMinus) +
                             std::sqrt(l.minus * kSurfPlus));
  const double c = work / l.total - 1.0;
  return std::acos(c) * 180.0 / M_PI;
}

// Counter-surface dispersion placeholder: smooth power laws standing in for
// a measured table until one is available.  Chosen so the relaxation time
// crosses the swept band (strong low-frequency leakage, weak at MHz).
const double kDispEps0 = 4000.0;
const double kDispEpsExp = -0.32;
const double kDispSigma0 = 8e-11;
const double kDispSigmaExp = 0.25;

void write_dispersion(const std::string& path) {
  ea::CsvWriter w;
  w.header({"freq_hz", "eps_r", "sigma_s_per_m"});
  for (double f : ea::logspace(0.5, 2e6, 40))
    w.row({f, kDispEps0 * std::pow(f, kDispEpsExp),
           kDispSigma0 * std::pow(f, kDispSigmaExp)});
  w.write_atomic(path);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string base = argc > 1 ? argv[1] : "data";
  const std::string fix = base + "/fixtures";
  std::filesystem::create_directories(fix);

  const std::vector<double> freqs = ea::logspace(1.0, 1e6, 73);
  write_sweep(fix + "/skin.csv", freqs, z_skin);
  write_sweep(fix + "/screen.csv", freqs, z_screen);
  write_sweep(fix + "/total.csv", freqs, z_total);

  {
    ea::CsvWriter w;
    w.header({"sample", "liquid", "theta_deg"});
    for (const Liquid& l : kLiquids)
      w.row_raw({"film_a", l.name, ea::format_g9(demo_angle_deg(l))});
    // duplicate replicate row; the mean leaves the solution unchanged
    w.row_raw({"film_a", "water", ea::format_g9(demo_angle_deg(kLiquids[0]))});
    w.write_atomic(fix + "/angles_demo.csv");
  }

  {
    ea::CsvWriter w;
    w.header({"mu_off", "mu_on", "fn_n"});
    w.row({0.512, 0.64, 0.5});
    w.row({0.3, 0.6, 1.0});
    w.row({0.2, 0.8, 2.0});
    w.write_atomic(fix + "/friction_demo.csv");
  }

  {
    ea::CsvWriter w;
    w.header({"name", "gamma_lw", "gamma_plus", "gamma_minus", "gamma_total"});
    for (const Liquid& l : kLiquids)
      w.row_raw({l.name, ea::format_g9(l.lw), ea::format_g9(l.plus),
                 ea::format_g9(l.minus), ea::format_g9(l.total)});
    w.write_atomic(base + "/probe_liquids.csv");
  }

  write_dispersion(base + "/sc_dispersion_placeholder.csv");

  std::printf("fixtures written under %s\n", base.c_str());
  return 0;
}
