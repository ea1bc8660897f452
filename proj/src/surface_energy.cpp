#include "ea/surface_energy.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "ea/csv.hpp"
#include "ea/errors.hpp"

namespace ea {

namespace {

constexpr double deg_to_rad = 3.14159265358979323846 / 180.0;

double parse_cell(const std::string& cell, const std::string& path,
                  std::size_t line) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail(ErrorCode::parse, path + ":" + std::to_string(line) +
                               ": not a number: '" + cell + "'");
  return v;
}

// shared line-oriented walk: skips blanks and '#' comments, checks the header
template <typename RowFn>
void read_csv_rows(const std::string& path, const std::string& expected_header,
                   RowFn&& on_row) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != expected_header)
        fail(ErrorCode::parse, path + ":" + std::to_string(lineno) +
                                   ": expected header '" + expected_header +
                                   "'");
      header_seen = true;
      continue;
    }
    on_row(split_csv_line(line), lineno);
  }
  if (!header_seen) fail(ErrorCode::parse, path + ": empty file");
}

}  // namespace

std::vector<ProbeLiquid> load_probe_liquids(const std::string& path) {
  std::vector<ProbeLiquid> out;
  read_csv_rows(
      path, "name,gamma_lw,gamma_plus,gamma_minus,gamma_total",
      [&](const std::vector<std::string>& cells, std::size_t lineno) {
        if (cells.size() != 5)
          fail(ErrorCode::parse, path + ":" + std::to_string(lineno) +
                                     ": expected 5 columns");
        ProbeLiquid l;
        l.name = cells[0];
        if (l.name.empty())
          fail(ErrorCode::validation,
               path + ":" + std::to_string(lineno) + ": empty liquid name");
        l.gamma_lw = parse_cell(cells[1], path, lineno);
        l.gamma_plus = parse_cell(cells[2], path, lineno);
        l.gamma_minus = parse_cell(cells[3], path, lineno);
        l.gamma_total = parse_cell(cells[4], path, lineno);
        if (l.gamma_lw < 0.0 || l.gamma_plus < 0.0 || l.gamma_minus < 0.0 ||
            l.gamma_total <= 0.0)
          fail(ErrorCode::validation,
               path + ":" + std::to_string(lineno) +
                   ": surface energy components must be nonnegative");
        const double recon =
            l.gamma_lw + 2.0 * std::sqrt(l.gamma_plus * l.gamma_minus);
        if (std::abs(recon - l.gamma_total) > 0.1)
          fail(ErrorCode::validation,
               "liquid '" + l.name + "': total " + format_g9(l.gamma_total) +
                   " inconsistent with components (" + format_g9(recon) + ")");
        out.push_back(std::move(l));
      });
  return out;
}

std::vector<AngleRecord> load_contact_angles(const std::string& path) {
  std::vector<AngleRecord> out;
  read_csv_rows(path, "sample,liquid,theta_deg",
                [&](const std::vector<std::string>& cells, std::size_t lineno) {
                  if (cells.size() != 3)
                    fail(ErrorCode::parse, path + ":" +
                                               std::to_string(lineno) +
                                               ": expected 3 columns");
                  AngleRecord r;
                  r.sample = cells[0];
                  r.liquid = cells[1];
                  if (r.sample.empty() || r.liquid.empty())
                    fail(ErrorCode::validation,
                         path + ":" + std::to_string(lineno) +
                             ": empty sample or liquid name");
                  r.theta_deg = parse_cell(cells[2], path, lineno);
                  out.push_back(std::move(r));
                });
  return out;
}

SurfaceEnergyResult solve_components(const std::vector<ProbeLiquid>& liquids,
                                     const std::vector<double>& theta_deg) {
  const std::size_t n = liquids.size();
  if (n < 3)
    fail(ErrorCode::validation,
         "surface energy solve needs at least 3 probe liquids");
  if (theta_deg.size() != n)
    fail(ErrorCode::validation, "one contact angle per liquid required");

  bool all_obtuse = true;
  std::vector<std::array<double, 3>> a(n);
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ProbeLiquid& l = liquids[i];
    if (l.gamma_lw < 0.0 || l.gamma_plus < 0.0 || l.gamma_minus < 0.0 ||
        l.gamma_total <= 0.0)
      fail(ErrorCode::validation,
           "liquid '" + l.name + "' has invalid components");
    if (!(theta_deg[i] > 0.0 && theta_deg[i] < 180.0))
      fail(ErrorCode::domain,
           "contact angle for '" + l.name + "' must lie in (0, 180) degrees");
    if (theta_deg[i] <= 90.0) all_obtuse = false;
    // unknowns: (sqrt gS_lw, sqrt gS+, sqrt gS-); note the acid-base cross
    // pairing puts sqrt(gL-) against sqrt(gS+) and vice versa
    a[i] = {2.0 * std::sqrt(l.gamma_lw), 2.0 * std::sqrt(l.gamma_minus),
            2.0 * std::sqrt(l.gamma_plus)};
    b[i] = l.gamma_total * (1.0 + std::cos(theta_deg[i] * deg_to_rad));
  }

  // normal equations
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double v[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i)
    for (int r = 0; r < 3; ++r) {
      v[r] += a[i][r] * b[i];
      for (int c = 0; c < 3; ++c) m[r][c] += a[i][r] * a[i][c];
    }

  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  const double scale = m[0][0] * m[1][1] * m[2][2];
  if (!(scale > 0.0) || std::abs(det) <= 1e-12 * scale)
    fail(ErrorCode::validation,
         "probe liquid set is rank-deficient; pick liquids with independent "
         "components");

  // clamped coordinate descent on the convex quadratic
  double x[3] = {0, 0, 0};
  for (int sweep = 0; sweep < 10000; ++sweep) {
    double biggest = 0.0;
    for (int j = 0; j < 3; ++j) {
      double r = v[j];
      for (int k = 0; k < 3; ++k)
        if (k != j) r -= m[j][k] * x[k];
      const double next = std::max(0.0, r / m[j][j]);
      biggest = std::max(biggest, std::abs(next - x[j]));
      x[j] = next;
    }
    if (biggest <= 1e-14 * std::max({1.0, x[0], x[1], x[2]})) break;
  }

  // polish: exact solve restricted to the active support, adopted only if it
  // stays feasible
  {
    int sup[3], ns = 0;
    for (int j = 0; j < 3; ++j)
      if (x[j] > 0.0) sup[ns++] = j;
    if (ns > 0) {
      double sm[3][3], sv[3], sx[3];
      for (int r = 0; r < ns; ++r) {
        sv[r] = v[sup[r]];
        for (int c = 0; c < ns; ++c) sm[r][c] = m[sup[r]][sup[c]];
      }
      bool ok = true;
      for (int col = 0; col < ns && ok; ++col) {  // Gaussian elimination
        int piv = col;
        for (int r = col + 1; r < ns; ++r)
          if (std::abs(sm[r][col]) > std::abs(sm[piv][col])) piv = r;
        if (sm[piv][col] == 0.0) {
          ok = false;
          break;
        }
        if (piv != col) {
          for (int c = 0; c < ns; ++c) std::swap(sm[col][c], sm[piv][c]);
          std::swap(sv[col], sv[piv]);
        }
        for (int r = col + 1; r < ns; ++r) {
          const double k = sm[r][col] / sm[col][col];
          for (int c = col; c < ns; ++c) sm[r][c] -= k * sm[col][c];
          sv[r] -= k * sv[col];
        }
      }
      if (ok) {
        for (int r = ns - 1; r >= 0; --r) {
          double s = sv[r];
          for (int c = r + 1; c < ns; ++c) s -= sm[r][c] * sx[c];
          sx[r] = s / sm[r][r];
        }
        bool feasible = true;
        for (int r = 0; r < ns; ++r)
          if (sx[r] < 0.0) feasible = false;
        if (feasible) {
          double polished[3] = {0, 0, 0};
          for (int r = 0; r < ns; ++r) polished[sup[r]] = sx[r];
          for (int j = 0; j < 3; ++j) x[j] = polished[j];
        }
      }
    }
  }

  SurfaceEnergyResult res;
  res.gamma_lw = x[0] * x[0];
  res.gamma_plus = x[1] * x[1];
  res.gamma_minus = x[2] * x[2];
  res.gamma_total = res.gamma_lw + 2.0 * x[1] * x[2];
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r =
        a[i][0] * x[0] + a[i][1] * x[1] + a[i][2] * x[2] - b[i];
    ss += r * r;
  }
  res.residual_mj_m2 = std::sqrt(ss);
  res.all_obtuse_warning = all_obtuse;
  return res;
}

double adhesive_work(const ProbeLiquid& liquid, double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg <= 180.0))
    fail(ErrorCode::domain, "adhesive work: angle must lie in [0, 180] degrees");
  return liquid.gamma_total * (1.0 + std::cos(theta_deg * deg_to_rad));
}

double adhesive_work_components(const ProbeLiquid& liquid,
                                const SurfaceEnergyResult& surface) {
  return 2.0 * std::sqrt(liquid.gamma_lw * surface.gamma_lw) +
         2.0 * std::sqrt(liquid.gamma_plus * surface.gamma_minus) +
         2.0 * std::sqrt(liquid.gamma_minus * surface.gamma_plus);
}

double hysteresis(double advancing_deg, double receding_deg) {
  return advancing_deg - receding_deg;
}

}  // namespace ea
