#pragma once

#include <cmath>
#include <cstddef>

namespace rainbow {

// Ceiling that treats values within 1e-9 (relative) of an integer as that
// integer, so exact powers such as 32^0.8 = 16 are not pushed up by rounding.
inline std::size_t ceil_snapped(double x) {
  const double r = std::round(x);
  if (std::fabs(x - r) <= 1e-9 * std::fmax(1.0, std::fabs(r))) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(x));
}

// ceil(c * x^e) with the same snapping.
inline std::size_t ceil_pow(double x, double e, double c = 1.0) { return ceil_snapped(c * std::pow(x, e)); }

}  // namespace rainbow
