#pragma once

#include <cmath>
#include <limits>

#include "mproots/numerics.hpp"

namespace mproots::test {

/// Number of agreeing significant digits between two values (infinite when
/// bit-identical).
inline double agree_digits(const Real& a, const Real& b) {
  if (a == b) return std::numeric_limits<double>::infinity();
  Real scale = abs(a) > abs(b) ? abs(a) : abs(b);
  if (scale.is_zero()) return std::numeric_limits<double>::infinity();
  Real rel = abs(a - b) / scale;
  return -rel.log10_abs();
}

}  // namespace mproots::test
