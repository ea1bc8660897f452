#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ea/errors.hpp"

namespace ea {

// n log-spaced nodes covering [lo, hi], endpoints included. lo, hi > 0.
inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    fail(ErrorCode::domain, "logspace: need 0 < lo < hi and n >= 2");
  std::vector<double> x(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                              static_cast<double>(n - 1));
  x.front() = lo;
  x.back() = hi;
  return x;
}

// Trapezoid rule on an arbitrary (increasing) grid.
inline double trapezoid(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(ErrorCode::domain, "trapezoid: mismatched or short grids");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  return s;
}

namespace detail {

template <typename F>
double simpson(F&& f, double a, double fa, double b, double fb, double m,
               double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_step(F&& f, double a, double fa, double b, double fb, double m,
                     double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0)
    fail(ErrorCode::convergence, "adaptive_simpson: max recursion depth");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] with an absolute-scale
// tolerance tol (caller normalizes if a relative bound is needed).
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        int max_depth = 48) {
  if (!(b > a)) {
    if (b == a) return 0.0;
    fail(ErrorCode::domain, "adaptive_simpson: b < a");
  }
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = detail::simpson(f, a, fa, b, fb, m, fm);
  return detail::adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace ea
