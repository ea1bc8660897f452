#pragma once

namespace ea {

// Vacuum permittivity, F/m.
inline constexpr double eps0_f_per_m = 8.854e-12;

// Relative permittivity of air at ambient conditions.
inline constexpr double air_rel_permittivity = 1.00059;

// Correction factor entering the mean-separation integrand (interpolates the
// elastic energy between full contact and low squeezing pressure).
inline constexpr double persson_gamma = 0.45;

// Cutoff separation below which a contact conducts rather than supports a
// leakage field drop, m.
inline constexpr double leak_cutoff_m = 10e-9;

}  // namespace ea
