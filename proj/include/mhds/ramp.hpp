#pragma once

#include <cmath>

namespace mhds {

// C-infinity transition 0 -> 1 on [0, 1] built from the exp(-1/t) mollifier.
inline double smooth01(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// Quintic smoothstep on [0, 1].
inline double quintic01(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

}  // namespace mhds
