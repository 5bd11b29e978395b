#pragma once

// Two LC circuits coupled through mutual inductance, treated as coupled
// unit-mass oscillators with H = p1^2/2 + w1^2 x1^2/2 + p2^2/2 + w2^2 x2^2/2
// + g w1 w2 x1 x2 (hbar = k_B = 1), and their two-qubit approximations.

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "numeric.hpp"
#include "qstate.hpp"
#include "quadrature.hpp"

namespace tomo {

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidCircuitParams : public CircuitError {
 public:
  using CircuitError::CircuitError;
};

class UnstableCoupling : public CircuitError {
 public:
  using CircuitError::CircuitError;
};

class QuadratureNotConverged : public CircuitError {
 public:
  QuadratureNotConverged(double change, int nodes)
      : CircuitError(message(change, nodes)), change_(change) {}
  double change() const { return change_; }

 private:
  static std::string message(double change, int nodes) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "overlap quadrature not converged: doubling %d nodes changed a coefficient by %.3e",
                  nodes, change);
    return buf;
  }
  double change_;
};

struct CircuitParams {
  double omega1 = 1.0;
  double delta_omega = 0.0;  // omega2 = omega1 + delta_omega
  double g = 0.0;            // L12 / sqrt(L1 L2)
  double temperature = 0.0;

  double omega2() const { return omega1 + delta_omega; }
};

inline void validate(const CircuitParams& p) {
  if (!(p.omega1 > 0.0) || !(p.omega2() > 0.0)) {
    throw InvalidCircuitParams("circuit frequencies must be positive");
  }
  if (!(std::abs(p.g) < 1.0)) throw UnstableCoupling("coupling |g| must be below 1");
  if (!(p.temperature >= 0.0)) throw InvalidCircuitParams("temperature must be non-negative");
}

struct NormalModes {
  double mixing_angle = 0.0;  // rotation applied to (x1, x2)
  double omega1 = 0.0;        // Omega_1
  double omega2 = 0.0;        // Omega_2
  double cross_term = 0.0;    // off-diagonal of the rotated potential matrix

  /// (X1, X2) = M (x1, x2) with M = [[c, s], [-s, c]].
  Eigen::Matrix2d rotation() const {
    const double c = std::cos(mixing_angle), s = std::sin(mixing_angle);
    Eigen::Matrix2d m;
    m << c, s, -s, c;
    return m;
  }
};

/// Rotation by 1/2 atan2(2 g w1 w2, w1^2 - w2^2) diagonalizes the potential
/// matrix [[w1^2, g w1 w2], [g w1 w2, w2^2]].
inline NormalModes normal_modes(const CircuitParams& p) {
  validate(p);
  const double w1 = p.omega1, w2 = p.omega2();
  const double v11 = w1 * w1, v22 = w2 * w2, v12 = p.g * w1 * w2;
  NormalModes nm;
  nm.mixing_angle = p.g == 0.0 ? 0.0 : 0.5 * std::atan2(2.0 * v12, v11 - v22);
  const double c = std::cos(nm.mixing_angle), s = std::sin(nm.mixing_angle);
  const double big1 = c * c * v11 + s * s * v22 + 2.0 * c * s * v12;
  const double big2 = s * s * v11 + c * c * v22 - 2.0 * c * s * v12;
  nm.cross_term = c * s * (v22 - v11) + (c * c - s * s) * v12;
  if (!(std::min(big1, big2) > 0.0)) {
    throw UnstableCoupling("normal-mode frequency squared is not positive");
  }
  nm.omega1 = std::sqrt(big1);
  nm.omega2 = std::sqrt(big2);
  return nm;
}

/// C^{mn}_{ij} = <i, j | m~, n~> for m + n <= 2 and i, j <= max_level.
class OverlapTable {
 public:
  static constexpr int mode_pairs = 6;

  OverlapTable(int max_level, int nodes)
      : max_level_(max_level), nodes_(nodes),
        data_(mode_pairs, Eigen::MatrixXd::Zero(max_level + 1, max_level + 1)) {}

  static int pair_index(int m, int n) {
    static constexpr int index[3][3] = {{0, 1, 4}, {2, 3, -1}, {5, -1, -1}};
    if (m < 0 || n < 0 || m + n > 2) throw std::out_of_range("OverlapTable: need m + n <= 2");
    return index[m][n];
  }

  double operator()(int m, int n, int i, int j) const { return data_[pair_index(m, n)](i, j); }
  double& at(int m, int n, int i, int j) { return data_[pair_index(m, n)](i, j); }

  const Eigen::MatrixXd& block(int m, int n) const { return data_[pair_index(m, n)]; }
  Eigen::MatrixXd& block(int m, int n) { return data_[pair_index(m, n)]; }

  int max_level() const { return max_level_; }
  int nodes() const { return nodes_; }

  /// Projection of |m~, n~> on span{|00>, |01>, |10>, |11>}.
  Eigen::Vector4d two_qubit_projection(int m, int n) const {
    const auto& c = block(m, n);
    return {c(0, 0), c(0, 1), c(1, 0), c(1, 1)};
  }

 private:
  int max_level_;
  int nodes_;
  std::vector<Eigen::MatrixXd> data_;
};

namespace detail {

// Tensor Gauss-Hermite quadrature after rotating onto the principal axes of
// the product Gaussian exp(-x^T Q x / 2), Q = diag(w1, w2) + M^T diag(O1, O2) M.
// The remaining integrand is polynomial, so the rule is exact once
// 2 * nodes > i + j + m + n.
inline OverlapTable compute_overlaps(const CircuitParams& p, const NormalModes& nm, int max_level,
                                     int nodes) {
  const double w1 = p.omega1, w2 = p.omega2();
  const Eigen::Matrix2d m = nm.rotation();
  Eigen::Matrix2d q = Eigen::Vector2d(w1, w2).asDiagonal();
  q += m.transpose() * Eigen::Vector2d(nm.omega1, nm.omega2).asDiagonal() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q);
  const Eigen::Matrix2d axes = es.eigenvectors();
  const Eigen::Vector2d scale(std::sqrt(2.0 / es.eigenvalues()(0)),
                              std::sqrt(2.0 / es.eigenvalues()(1)));
  const double jacobian = scale(0) * scale(1);

  const auto rule = gauss_hermite(nodes);
  const int total = nodes * nodes;
  const int levels = max_level + 1;
  Eigen::MatrixXd first(levels, total), second(levels, total);
  Eigen::MatrixXd weights(OverlapTable::mode_pairs, total);
  std::vector<double> p1(levels), p2(levels);
  double pm[3], pn[3];
  for (int a = 0; a < nodes; ++a) {
    for (int b = 0; b < nodes; ++b) {
      const int k = a * nodes + b;
      const Eigen::Vector2d x = axes * Eigen::Vector2d(rule.nodes[a] * scale(0), rule.nodes[b] * scale(1));
      const Eigen::Vector2d big = m * x;
      hermite_polynomial_parts(max_level, w1, x(0), p1.data());
      hermite_polynomial_parts(max_level, w2, x(1), p2.data());
      hermite_polynomial_parts(2, nm.omega1, big(0), pm);
      hermite_polynomial_parts(2, nm.omega2, big(1), pn);
      for (int l = 0; l < levels; ++l) {
        first(l, k) = p1[l];
        second(l, k) = p2[l];
      }
      const double w = rule.weights[a] * rule.weights[b] * jacobian;
      for (int mm = 0; mm <= 2; ++mm)
        for (int nn = 0; mm + nn <= 2; ++nn)
          weights(OverlapTable::pair_index(mm, nn), k) = w * pm[mm] * pn[nn];
    }
  }

  OverlapTable table(max_level, nodes);
  for (int mm = 0; mm <= 2; ++mm) {
    for (int nn = 0; mm + nn <= 2; ++nn) {
      const int idx = OverlapTable::pair_index(mm, nn);
      Eigen::MatrixXd c = first * weights.row(idx).transpose().asDiagonal() * second.transpose();
      for (int i = 0; i < levels; ++i)
        for (int j = 0; j < levels; ++j)
          if ((i + j + mm + nn) % 2 != 0) c(i, j) = 0.0;
      table.block(mm, nn) = c;
    }
  }
  return table;
}

}  // namespace detail

inline constexpr int default_quadrature_nodes = 80;
inline constexpr double quadrature_tolerance = 1e-8;

/// Overlap coefficients by quadrature, checked against a rule with twice the
/// nodes; throws QuadratureNotConverged if any coefficient moves by more than 1e-8.
inline OverlapTable overlap_coefficients(const CircuitParams& p, int max_level,
                                         int nodes = default_quadrature_nodes) {
  if (max_level < 1 || max_level > max_supported_level) {
    throw std::invalid_argument("overlap_coefficients: max_level must be in [1, 20]");
  }
  const NormalModes nm = normal_modes(p);
  OverlapTable table = detail::compute_overlaps(p, nm, max_level, nodes);
  const OverlapTable check = detail::compute_overlaps(p, nm, max_level, 2 * nodes);
  double change = 0.0;
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; m + n <= 2; ++n)
      change = std::max(change, (table.block(m, n) - check.block(m, n)).cwiseAbs().maxCoeff());
  if (change > quadrature_tolerance) throw QuadratureNotConverged(change, nodes);
  return table;
}

struct CircuitOptions {
  int max_level = 12;
  int nodes = default_quadrature_nodes;
};

/// Result of projecting an oscillator state on the two-qubit subspace.
struct TwoQubitApproximation {
  XState state;                // non-negative gauge of `projected`
  Eigen::Matrix4d projected;   // normalized projection in the |ij> basis, signs as computed
  double alpha = 0.0;          // weight lost outside the two-qubit subspace
  NormalModes modes;
  bool ground_fallback = false;  // thermal request answered with the ground state
};

namespace detail {

inline XState gauge(const Eigen::Matrix4d& rho) {
  return x_state_from_signed(rho(0, 0), rho(1, 1), rho(2, 2), rho(3, 3), rho(0, 3), rho(1, 2));
}

}  // namespace detail

inline TwoQubitApproximation ground_state_2qb(const CircuitParams& p, const CircuitOptions& opt = {}) {
  const OverlapTable table = overlap_coefficients(p, opt.max_level, opt.nodes);
  const Eigen::Vector4d v = table.two_qubit_projection(0, 0);
  const double kept = v.squaredNorm();
  TwoQubitApproximation out;
  out.projected = v * v.transpose() / kept;
  out.alpha = 1.0 - kept;
  out.modes = normal_modes(p);
  out.state = detail::gauge(out.projected);
  return out;
}

/// Temperatures below this return the ground-state approximation, flagged.
inline constexpr double minimum_temperature = 1e-6;

/// Thermal state truncated to normal-mode terms with m + n <= 2, projected on
/// the two-qubit subspace. alpha compares the kept weight with the full
/// two-oscillator partition function.
inline TwoQubitApproximation thermal_state_2qb(const CircuitParams& p, const CircuitOptions& opt = {}) {
  validate(p);
  if (p.temperature < minimum_temperature) {
    auto out = ground_state_2qb(p, opt);
    out.ground_fallback = true;
    return out;
  }
  const OverlapTable table = overlap_coefficients(p, opt.max_level, opt.nodes);
  const NormalModes nm = normal_modes(p);
  const double t = p.temperature;
  // Boltzmann factors relative to the ground energy.
  Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; m + n <= 2; ++n) {
      const double boltzmann = std::exp(-(m * nm.omega1 + n * nm.omega2) / t);
      const Eigen::Vector4d v = table.two_qubit_projection(m, n);
      w += boltzmann * v * v.transpose();
    }
  }
  const double z1 = w.trace();
  const double z = 1.0 / ((1.0 - std::exp(-nm.omega1 / t)) * (1.0 - std::exp(-nm.omega2 / t)));
  TwoQubitApproximation out;
  out.projected = w / z1;
  out.alpha = 1.0 - z1 / z;
  out.modes = nm;
  out.state = detail::gauge(out.projected);
  return out;
}

}  // namespace tomo
