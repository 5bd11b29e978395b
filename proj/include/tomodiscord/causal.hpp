#pragma once

// Entropic asymmetry from independence functions, quantum and tomographic.

#include <optional>

#include "qstate.hpp"
#include "tomography.hpp"

namespace tomo {

/// Marginal entropy below which an independence function is undefined.
inline constexpr double undefined_entropy = 1e-9;

struct AsymmetryReport {
  enum class Variant { Quantum, Tomographic };

  Variant variant = Variant::Quantum;
  std::optional<MeasurementSetting> setting;  // set for the tomographic variant
  std::optional<double> i_ab;                  // i_{A|B} = (S_A - I) / S_A
  std::optional<double> i_ba;                  // i_{B|A} = (S_B - I) / S_B
  std::optional<double> d_ab;                  // i_{A|B} - i_{B|A}

  bool defined() const { return d_ab.has_value(); }
};

/// Independence functions and their difference from marginal entropies and
/// the mutual information.
inline AsymmetryReport asymmetry_from_entropies(double s_a, double s_b, double info) {
  AsymmetryReport r;
  if (s_a >= undefined_entropy) r.i_ab = (s_a - info) / s_a;
  if (s_b >= undefined_entropy) r.i_ba = (s_b - info) / s_b;
  if (r.i_ab && r.i_ba) r.d_ab = *r.i_ab - *r.i_ba;
  return r;
}

inline AsymmetryReport quantum_asymmetry(const TwoQubitState& state) {
  const auto e = entropies(state);
  auto r = asymmetry_from_entropies(e.a, e.b, e.a + e.b - e.ab);
  r.variant = AsymmetryReport::Variant::Quantum;
  return r;
}

inline AsymmetryReport tomographic_asymmetry(const Tomogram& t) {
  const auto h = tomographic_entropies(t);
  auto r = asymmetry_from_entropies(h.h_a, h.h_b, h.j);
  r.variant = AsymmetryReport::Variant::Tomographic;
  r.setting = t.setting;
  return r;
}

inline AsymmetryReport tomographic_asymmetry(const TwoQubitState& state,
                                             const MeasurementSetting& setting) {
  return tomographic_asymmetry(tomogram(state, setting));
}

}  // namespace tomo
