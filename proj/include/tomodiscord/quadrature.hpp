#pragma once

// Gauss-Hermite quadrature and harmonic-oscillator eigenfunctions.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "numeric.hpp"

namespace tomo {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights for int exp(-t^2) f(t) dt, by Newton iteration on the
/// orthonormal Hermite recurrence. Weights keep full relative precision in
/// the tails, which the eigenvector (Golub-Welsch) route does not.
inline QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
  const double pim4 = std::pow(pi, -0.25);
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    double pp = 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-14 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("gauss_hermite: Newton iteration did not converge");
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / (pp * pp);
  }
  return rule;
}

/// Normalized oscillator eigenfunctions psi_0..psi_max at coordinate x for
/// frequency omega, without the Gaussian factor exp(-omega x^2 / 2):
///   psi_l(x) = omega^{1/4} / sqrt(2^l l! sqrt(pi)) H_l(sqrt(omega) x) exp(-omega x^2 / 2).
/// Uses the three-term recurrence of the normalized functions.
inline void hermite_polynomial_parts(int max_level, double omega, double x, double* out) {
  const double y = std::sqrt(omega) * x;
  out[0] = std::pow(omega / pi, 0.25);
  if (max_level >= 1) out[1] = std::sqrt(2.0) * y * out[0];
  for (int l = 1; l < max_level; ++l) {
    out[l + 1] = std::sqrt(2.0 / (l + 1)) * y * out[l] - std::sqrt(static_cast<double>(l) / (l + 1)) * out[l - 1];
  }
}

inline constexpr int max_supported_level = 20;

/// psi_l^{(omega)}(x).
inline double hermite_wavefunction(int level, double omega, double x) {
  if (level < 0 || level > max_supported_level) {
    throw std::invalid_argument("hermite_wavefunction: level outside [0, 20]");
  }
  double parts[max_supported_level + 1];
  hermite_polynomial_parts(level, omega, x, parts);
  return parts[level] * std::exp(-0.5 * omega * x * x);
}

}  // namespace tomo
