#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>

namespace tomo {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// -p log2 p with the 0 log 0 = 0 convention. Inputs in [-1e-12, 0] are
// treated as zero (rotation round-off).
inline double entropy_term(double p) {
  if (p <= 0.0) return 0.0;
  return -p * std::log2(p);
}

/// Binary entropy h(x) = -x log2 x - (1-x) log2 (1-x), in bits.
inline double binary_entropy(double x) {
  return entropy_term(x) + entropy_term(1.0 - x);
}

/// Shannon entropy of a probability vector, in bits.
inline double shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) h += entropy_term(p);
  return h;
}

/// Wrap an angle into [0, period).
inline double wrap_angle(double angle, double period = 2.0 * pi) {
  double r = std::fmod(angle, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

}  // namespace tomo
