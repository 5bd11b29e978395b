#pragma once

// Seeded generators of random X-states and arbitrary mixed two-qubit states.
//
// Streams are explicit values. Worker i of a parallel study uses
// SeedStream(seed).substream(i), so results do not depend on scheduling.
// The X-state generator is not uniform with respect to any unitarily
// invariant measure.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "qstate.hpp"

namespace tomo {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed, std::uint64_t index = 0)
      : seed_(seed), index_(index), engine_(splitmix64(splitmix64(seed) ^ splitmix64(~index))) {}

  /// Independent stream keyed by (seed, i); does not advance this stream.
  SeedStream substream(std::uint64_t i) const { return SeedStream(seed_, i); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

  /// U(0, 1).
  double uniform() { return uniform_(engine_); }

  /// N(0, 1).
  double normal() { return normal_(engine_); }

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Diagonal p_i / sum p, coherences rho14 = eps1 sqrt(rho11 rho44),
/// rho23 = eps2 sqrt(rho22 rho33).
inline XState x_state_from_draws(const std::array<double, 4>& p, double eps1, double eps2) {
  const double total = p[0] + p[1] + p[2] + p[3];
  const double r11 = p[0] / total, r22 = p[1] / total, r33 = p[2] / total;
  // The last entry closes the trace exactly.
  const double r44 = 1.0 - r11 - r22 - r33;
  return XState::make(r11, r22, r33, std::max(0.0, r44), eps1 * std::sqrt(r11 * std::max(0.0, r44)),
                      eps2 * std::sqrt(r22 * r33));
}

inline XState random_x_state(SeedStream& rng) {
  std::array<double, 4> p{};
  for (double& v : p) v = rng.uniform();
  const double e1 = rng.uniform();
  const double e2 = rng.uniform();
  return x_state_from_draws(p, e1, e2);
}

/// sum_k p_k |psi_k><psi_k| / <psi_k|psi_k>, normalized by sum_k p_k.
inline TwoQubitState mixed_state_from_draws(const std::array<Eigen::Vector4cd, 4>& psi,
                                            const std::array<double, 4>& p) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    rho += p[k] * (psi[k] * psi[k].adjoint()) / psi[k].squaredNorm();
    total += p[k];
  }
  rho /= total;
  // Exact Hermitian symmetry; the sum above can differ by round-off.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return TwoQubitState::from_matrix(rho);
}

inline Eigen::Vector4cd random_gaussian_vector(SeedStream& rng) {
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i).real(rng.normal());
  for (int i = 0; i < 4; ++i) v(i).imag(rng.normal());
  return v;
}

inline TwoQubitState random_mixed_state(SeedStream& rng) {
  std::array<Eigen::Vector4cd, 4> psi;
  for (auto& v : psi) v = random_gaussian_vector(rng);
  std::array<double, 4> p{};
  for (double& v : p) v = rng.uniform();
  return mixed_state_from_draws(psi, p);
}

/// Pure state with i.i.d. complex Gaussian amplitudes.
inline TwoQubitState random_pure_state(SeedStream& rng) {
  return TwoQubitState::pure(random_gaussian_vector(rng));
}

}  // namespace tomo
