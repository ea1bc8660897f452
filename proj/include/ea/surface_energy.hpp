#pragma once

#include <string>
#include <vector>

namespace ea {

// van Oss acid-base description of a probe liquid, mJ/m^2.
struct ProbeLiquid {
  std::string name;
  double gamma_lw = 0.0;     // Lifshitz-van der Waals component
  double gamma_plus = 0.0;   // electron acceptor
  double gamma_minus = 0.0;  // electron donor
  double gamma_total = 0.0;
};

// CSV schema: name,gamma_lw,gamma_plus,gamma_minus,gamma_total. Each row must
// satisfy gamma_total = gamma_lw + 2 sqrt(gamma_plus gamma_minus) to 0.1.
std::vector<ProbeLiquid> load_probe_liquids(const std::string& path);

struct AngleRecord {
  std::string sample;
  std::string liquid;
  double theta_deg = 0.0;
};

// CSV schema: sample,liquid,theta_deg.
std::vector<AngleRecord> load_contact_angles(const std::string& path);

struct SurfaceEnergyResult {
  double gamma_lw = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double gamma_total = 0.0;     // gamma_lw + 2 sqrt(gamma_plus gamma_minus)
  double residual_mj_m2 = 0.0;  // least-squares residual norm
  bool all_obtuse_warning = false;  // every probe angle was > 90 degrees
};

// Solves gamma_L (1 + cos theta) = 2 sqrt(gS_lw gL_lw) + 2 sqrt(gS+ gL-) +
// 2 sqrt(gS- gL+) for the surface components, which is linear in the square
// roots; nonnegativity is enforced on those variables. One angle per liquid;
// aggregate replicates before calling.
SurfaceEnergyResult solve_components(const std::vector<ProbeLiquid>& liquids,
                                     const std::vector<double>& theta_deg);

// W = gamma_L^total (1 + cos theta).
double adhesive_work(const ProbeLiquid& liquid, double theta_deg);

// W from the solved components of both sides.
double adhesive_work_components(const ProbeLiquid& liquid,
                                const SurfaceEnergyResult& surface);

// Advancing minus receding; negative values signal inconsistent data and are
// returned unclamped.
double hysteresis(double advancing_deg, double receding_deg);

}  // namespace ea
