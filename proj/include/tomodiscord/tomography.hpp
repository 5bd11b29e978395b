#pragma once

// Local-rotation tomograms of two-qubit states.

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "numeric.hpp"
#include "qstate.hpp"

namespace tomo {

/// Bloch angles of the two local rotations U(theta_A, phi_A) (x) U(theta_B, phi_B).
struct MeasurementSetting {
  double theta_a = 0.0;
  double phi_a = 0.0;
  double theta_b = 0.0;
  double phi_b = 0.0;

  friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;
};

/// Maps one side's angles into theta in [0, pi], phi in [0, 2 pi) without
/// changing the rotation's measured axis.
inline std::pair<double, double> canonical_angles(double theta, double phi) {
  double t = wrap_angle(theta, 2.0 * pi);
  double p = phi;
  if (t > pi) {
    // U(2 pi - t, p) measures the same axis as U(t, p + pi).
    t = 2.0 * pi - t;
    p += pi;
  }
  return {t, wrap_angle(p)};
}

inline MeasurementSetting canonicalize(const MeasurementSetting& s) {
  auto [ta, pa] = canonical_angles(s.theta_a, s.phi_a);
  auto [tb, pb] = canonical_angles(s.theta_b, s.phi_b);
  return {ta, pa, tb, pb};
}

/// U(theta, phi) = R(theta / 2) * diag(e^{i phi / 2}, e^{-i phi / 2}).
inline Eigen::Matrix2cd rotation_matrix(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Eigen::Matrix2cd rot;
  rot << c, s, -s, c;
  Eigen::Matrix2cd phase = Eigen::Matrix2cd::Zero();
  phase(0, 0) = std::polar(1.0, phi / 2.0);
  phase(1, 1) = std::polar(1.0, -phi / 2.0);
  return rot * phase;
}

/// Bloch vector of the projector U^dagger |0><0| U, i.e. the axis whose "+"
/// outcome is recorded as tomogram index 0.
inline Eigen::Vector3d measurement_axis(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Inverse of measurement_axis for a unit vector; theta in [0, pi], phi in [0, 2 pi).
inline std::pair<double, double> axis_angles(const Eigen::Vector3d& n) {
  const Eigen::Vector3d u = n.normalized();
  const double theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  const double phi = (std::abs(u.x()) + std::abs(u.y()) > 0.0) ? wrap_angle(std::atan2(u.y(), u.x()))
                                                                : 0.0;
  return {theta, phi};
}

inline MeasurementSetting setting_from_axes(const Eigen::Vector3d& na, const Eigen::Vector3d& nb) {
  auto [ta, pa] = axis_angles(na);
  auto [tb, pb] = axis_angles(nb);
  return {ta, pa, tb, pb};
}

/// Joint outcome distribution in the order {T00, T01, T10, T11}.
struct Tomogram {
  std::array<double, 4> probs{};
  MeasurementSetting setting{};

  double operator[](int k) const { return probs[k]; }
};

namespace detail {

inline constexpr double probability_clamp = 1e-12;

inline std::array<double, 4> clamp_normalize(std::array<double, 4> p) {
  double total = 0.0;
  for (double& v : p) {
    if (v < 0.0) v = 0.0;
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace detail

/// T_m = <m| (U_A (x) U_B) rho (U_A (x) U_B)^dagger |m>.
inline Tomogram tomogram(const TwoQubitState& state, const MeasurementSetting& s) {
  const Eigen::Matrix2cd ua = rotation_matrix(s.theta_a, s.phi_a);
  const Eigen::Matrix2cd ub = rotation_matrix(s.theta_b, s.phi_b);
  Eigen::Matrix4cd u;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) u(2 * i + k, 2 * j + l) = ua(i, j) * ub(k, l);
  const Eigen::Matrix4cd rotated = u * state.matrix() * u.adjoint();
  std::array<double, 4> p{};
  for (int m = 0; m < 4; ++m) p[m] = rotated(m, m).real();
  return {detail::clamp_normalize(p), s};
}

using Marginal = std::array<double, 2>;

/// Row and column sums: (T_A, T_B).
inline std::pair<Marginal, Marginal> reduced_tomograms(const Tomogram& t) {
  const auto& p = t.probs;
  return {Marginal{p[0] + p[1], p[2] + p[3]}, Marginal{p[0] + p[2], p[1] + p[3]}};
}

struct TomographicEntropies {
  double h_a;
  double h_b;
  double h_ab;
  double j;  // H_A + H_B - H_AB
};

inline TomographicEntropies tomographic_entropies(const Tomogram& t) {
  auto [ta, tb] = reduced_tomograms(t);
  const double ha = shannon_entropy(ta);
  const double hb = shannon_entropy(tb);
  const double hab = shannon_entropy(t.probs);
  return {ha, hb, hab, ha + hb - hab};
}

inline double tomographic_mutual_information(const TwoQubitState& state,
                                             const MeasurementSetting& s) {
  return tomographic_entropies(tomogram(state, s)).j;
}

/// Pauli decomposition rho = (1 + a.sigma (x) 1 + 1 (x) b.sigma + sum C_ij sigma_i (x) sigma_j) / 4.
struct BlochData {
  Eigen::Vector3d a;
  Eigen::Vector3d b;
  Eigen::Matrix3d c;
};

inline std::array<Eigen::Matrix2cd, 4> pauli_basis() {
  const cplx i{0.0, 1.0};
  Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd x, y, z;
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  return {id, x, y, z};
}

inline BlochData bloch_data(const TwoQubitState& state) {
  const auto sigma = pauli_basis();
  const Eigen::Matrix4cd& rho = state.matrix();
  auto expect = [&](int p, int q) {
    // Tr(rho (sigma_p (x) sigma_q))
    cplx acc = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l)
            acc += rho(2 * j + l, 2 * i + k) * sigma[p](i, j) * sigma[q](k, l);
    return acc.real();
  };
  BlochData d;
  for (int r = 0; r < 3; ++r) {
    d.a(r) = expect(r + 1, 0);
    d.b(r) = expect(0, r + 1);
    for (int s = 0; s < 3; ++s) d.c(r, s) = expect(r + 1, s + 1);
  }
  return d;
}

/// Tomogram for measurement axes n_A, n_B from the Pauli decomposition.
inline std::array<double, 4> tomogram_from_axes(const BlochData& d, const Eigen::Vector3d& na,
                                                const Eigen::Vector3d& nb) {
  const double ca = d.a.dot(na);
  const double cb = d.b.dot(nb);
  const double cc = na.dot(d.c * nb);
  return detail::clamp_normalize({0.25 * (1.0 + ca + cb + cc), 0.25 * (1.0 + ca - cb - cc),
                                  0.25 * (1.0 - ca + cb - cc), 0.25 * (1.0 - ca - cb + cc)});
}

/// Closed-form tomogram of an X-state for arbitrary angles.
inline Tomogram x_tomogram_closed_form(const XState& x, const MeasurementSetting& s) {
  const double ca = std::cos(s.theta_a);
  const double cb = std::cos(s.theta_b);
  const double za = 0.25 * x.z_a() * ca;
  const double zb = 0.25 * x.z_b() * cb;
  const double zab = 0.25 * x.z_ab() * ca * cb;
  const double coh = 0.5 * std::sin(s.theta_a) * std::sin(s.theta_b) *
                     (x.rho14 * std::cos(s.phi_a + s.phi_b) + x.rho23 * std::cos(s.phi_a - s.phi_b));
  return {detail::clamp_normalize({0.25 + za + zb + zab + coh, 0.25 + za - zb - zab - coh,
                                   0.25 - za + zb - zab - coh, 0.25 - za - zb + zab + coh}),
          s};
}

/// Tomogram at theta_A = theta_B = 0: the diagonal of the X-state.
inline Tomogram diag_tomogram(const XState& x) {
  return {detail::clamp_normalize({x.rho11, x.rho22, x.rho33, x.rho44}), MeasurementSetting{}};
}

/// Tomogram at theta_A = theta_B = pi/2, phi = 0: {1/4+k, 1/4-k, 1/4-k, 1/4+k},
/// k = (rho14 + rho23) / 2.
inline Tomogram sym_tomogram(const XState& x) {
  const double k = 0.5 * (x.rho14 + x.rho23);
  return {detail::clamp_normalize({0.25 + k, 0.25 - k, 0.25 - k, 0.25 + k}),
          MeasurementSetting{pi / 2.0, 0.0, pi / 2.0, 0.0}};
}

}  // namespace tomo
