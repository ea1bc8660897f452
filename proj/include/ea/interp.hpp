#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ea/errors.hpp"

namespace ea {

// Out-of-range handling for tabulated data.
enum class RangePolicy { strict, clamp };

namespace detail {

// Piecewise-linear interpolation on a strictly increasing abscissa grid.
// RangePolicy::strict throws outside [x.front(), x.back()]; clamp holds the
// endpoint values.
inline double piecewise_linear(const std::vector<double>& x,
                               const std::vector<double>& y, double xq,
                               RangePolicy policy) {
  if (xq <= x.front()) {
    if (xq == x.front() || policy == RangePolicy::clamp) return y.front();
    fail(ErrorCode::range, "interpolation query below tabulated range");
  }
  if (xq >= x.back()) {
    if (xq == x.back() || policy == RangePolicy::clamp) return y.back();
    fail(ErrorCode::range, "interpolation query above tabulated range");
  }
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
  const double t = (xq - x[i]) / (x[i + 1] - x[i]);
  return y[i] + t * (y[i + 1] - y[i]);
}

}  // namespace detail

}  // namespace ea
