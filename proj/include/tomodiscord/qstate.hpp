#pragma once

// Validated density operators for one and two qubits.
//
// Two-qubit operators use the tensor order A (x) B with basis
// |00>, |01>, |10>, |11>. Entropies are in bits.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "numeric.hpp"

namespace tomo {

template <int Dim>
using CMatrix = Eigen::Matrix<cplx, Dim, Dim>;

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
// Eigenvalues in [-negative_eigenvalue, 0) are round-off and clamp to zero.
inline constexpr double negative_eigenvalue = 1e-10;
}  // namespace tolerance

enum class Violation {
  BadDimension,
  NotHermitian,
  TraceNotOne,
  NotPositive,
  NegativeEntry,
  CoherenceBound,
};

inline const char* to_string(Violation v) {
  switch (v) {
    case Violation::BadDimension: return "BadDimension";
    case Violation::NotHermitian: return "NotHermitian";
    case Violation::TraceNotOne: return "TraceNotOne";
    case Violation::NotPositive: return "NotPositive";
    case Violation::NegativeEntry: return "NegativeEntry";
    case Violation::CoherenceBound: return "CoherenceBound";
  }
  return "Unknown";
}

struct ViolationDetail {
  Violation kind;
  double magnitude;  // size of the offending deviation
  std::string what;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ViolationDetail> violations)
      : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

  const std::vector<ViolationDetail>& violations() const { return violations_; }

  bool has(Violation kind) const {
    return std::any_of(violations_.begin(), violations_.end(),
                       [kind](const ViolationDetail& v) { return v.kind == kind; });
  }

 private:
  static std::string describe(const std::vector<ViolationDetail>& violations) {
    std::string msg = "invalid density matrix:";
    for (const auto& v : violations) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", v.magnitude);
      msg += " ";
      msg += to_string(v.kind);
      msg += " (" + v.what + " = " + buf + ")";
      msg += ";";
    }
    msg.pop_back();
    return msg;
  }

  std::vector<ViolationDetail> violations_;
};

template <int Dim>
class DensityMatrix {
  static_assert(Dim == 2 || Dim == 4, "only qubits and qubit pairs are supported");

 public:
  using Matrix = CMatrix<Dim>;
  using Spectrum = Eigen::Matrix<double, Dim, 1>;

  /// Lists every violated invariant; empty means `raw` is a valid state.
  static std::vector<ViolationDetail> check(const Eigen::MatrixXcd& raw) {
    std::vector<ViolationDetail> out;
    if (raw.rows() != Dim || raw.cols() != Dim) {
      out.push_back({Violation::BadDimension, static_cast<double>(raw.rows()),
                     "expected " + std::to_string(Dim) + "x" + std::to_string(Dim) +
                         ", got " + std::to_string(raw.rows()) + "x" +
                         std::to_string(raw.cols())});
      return out;
    }
    const Matrix m = raw;
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= tolerance::hermitian)) {
      out.push_back({Violation::NotHermitian, asym, "max |rho_ij - conj(rho_ji)|"});
    }
    const cplx tr = m.trace();
    const double tr_err = std::abs(tr - 1.0);
    if (!(tr_err <= tolerance::trace)) {
      out.push_back({Violation::TraceNotOne, tr_err, "|Tr rho - 1|"});
    }
    const Matrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (!(lmin >= -tolerance::negative_eigenvalue)) {
      out.push_back({Violation::NotPositive, -lmin, "-(smallest eigenvalue)"});
    }
    return out;
  }

  /// Validates without repairing; throws ValidationError on any violation.
  static DensityMatrix validate(const Eigen::MatrixXcd& raw) {
    auto violations = check(raw);
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return DensityMatrix(Matrix(raw));
  }

  const Matrix& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  /// Ascending eigenvalues with round-off negatives clamped to zero.
  const Spectrum& eigenvalues() const { return spectrum_; }

  double purity() const { return (m_ * m_).trace().real(); }

 private:
  explicit DensityMatrix(const Matrix& m) : m_(m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    spectrum_ = es.eigenvalues().cwiseMax(0.0);
  }

  Matrix m_;
  Spectrum spectrum_;
};

using QubitDensity = DensityMatrix<2>;
using PairDensity = DensityMatrix<4>;

/// Validates a raw square matrix of dimension 2 or 4 (dimension fixed by Dim).
template <int Dim>
DensityMatrix<Dim> validate_density(const Eigen::MatrixXcd& raw) {
  return DensityMatrix<Dim>::validate(raw);
}

/// S = -sum lambda log2 lambda over the (clamped) spectrum.
template <int Dim>
double von_neumann_entropy(const DensityMatrix<Dim>& rho) {
  double s = 0.0;
  for (int k = 0; k < Dim; ++k) s += entropy_term(rho.eigenvalues()(k));
  return s;
}

enum class Subsystem { A, B };

inline const char* to_string(Subsystem s) { return s == Subsystem::A ? "A" : "B"; }

/// Reduced operator of the surviving subsystem. `traced` names the one that
/// is traced out: partial_trace(rho, Subsystem::B) gives rho_A.
inline Eigen::Matrix2cd partial_trace_matrix(const Eigen::Matrix4cd& rho, Subsystem traced) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        out(i, j) += traced == Subsystem::B ? rho(2 * i + k, 2 * j + k)
                                            : rho(2 * k + i, 2 * k + j);
      }
    }
  }
  return out;
}

inline QubitDensity partial_trace(const PairDensity& rho, Subsystem traced) {
  return QubitDensity::validate(partial_trace_matrix(rho.matrix(), traced));
}

class TwoQubitState {
 public:
  explicit TwoQubitState(PairDensity joint)
      : joint_(std::move(joint)),
        marginal_a_(partial_trace(joint_, Subsystem::B)),
        marginal_b_(partial_trace(joint_, Subsystem::A)) {}

  static TwoQubitState from_matrix(const Eigen::MatrixXcd& raw) {
    return TwoQubitState(PairDensity::validate(raw));
  }

  static TwoQubitState product(const QubitDensity& a, const QubitDensity& b) {
    Eigen::Matrix4cd m;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return from_matrix(m);
  }

  /// Pure state |psi><psi| of a (not necessarily normalized) amplitude vector.
  static TwoQubitState pure(const Eigen::Vector4cd& psi) {
    const Eigen::Vector4cd v = psi / psi.norm();
    return from_matrix(v * v.adjoint());
  }

  const PairDensity& joint() const { return joint_; }
  const QubitDensity& marginal_a() const { return marginal_a_; }
  const QubitDensity& marginal_b() const { return marginal_b_; }
  const QubitDensity& marginal(Subsystem s) const {
    return s == Subsystem::A ? marginal_a_ : marginal_b_;
  }
  const Eigen::Matrix4cd& matrix() const { return joint_.matrix(); }

 private:
  PairDensity joint_;
  QubitDensity marginal_a_;
  QubitDensity marginal_b_;
};

struct Entropies {
  double a;
  double b;
  double ab;
};

inline Entropies entropies(const TwoQubitState& s) {
  return {von_neumann_entropy(s.marginal_a()), von_neumann_entropy(s.marginal_b()),
          von_neumann_entropy(s.joint())};
}

/// I = S_A + S_B - S_AB.
inline double quantum_mutual_information(const TwoQubitState& s) {
  const auto e = entropies(s);
  return e.a + e.b - e.ab;
}

/// X-shaped two-qubit state: nonzero entries only on the diagonal and the
/// anti-diagonal, with real non-negative coherences rho14 and rho23.
struct XState {
  double rho11 = 0.25;
  double rho22 = 0.25;
  double rho33 = 0.25;
  double rho44 = 0.25;
  double rho14 = 0.0;
  double rho23 = 0.0;

  static constexpr double tolerance = 1e-12;

  std::vector<ViolationDetail> violations() const {
    std::vector<ViolationDetail> out;
    const double dmin = std::min({rho11, rho22, rho33, rho44});
    if (dmin < -tolerance) out.push_back({Violation::NegativeEntry, -dmin, "-(smallest diagonal)"});
    const double cmin = std::min(rho14, rho23);
    if (cmin < -tolerance) out.push_back({Violation::NegativeEntry, -cmin, "-(smallest coherence)"});
    const double tr = std::abs(rho11 + rho22 + rho33 + rho44 - 1.0);
    if (tr > tolerance) out.push_back({Violation::TraceNotOne, tr, "|Tr rho - 1|"});
    const double b23 = rho23 * rho23 - rho22 * rho33;
    if (b23 > tolerance) out.push_back({Violation::CoherenceBound, b23, "rho23^2 - rho22 rho33"});
    const double b14 = rho14 * rho14 - rho11 * rho44;
    if (b14 > tolerance) out.push_back({Violation::CoherenceBound, b14, "rho14^2 - rho11 rho44"});
    return out;
  }

  /// Returns the validated state or throws ValidationError.
  static XState make(double r11, double r22, double r33, double r44, double r14, double r23) {
    XState x{r11, r22, r33, r44, r14, r23};
    auto v = x.violations();
    if (!v.empty()) throw ValidationError(std::move(v));
    return x;
  }

  double z_a() const { return rho11 + rho22 - rho33 - rho44; }
  double z_b() const { return rho11 - rho22 + rho33 - rho44; }
  double z_ab() const { return rho11 - rho22 - rho33 + rho44; }

  Eigen::Matrix4cd matrix() const {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = rho11;
    m(1, 1) = rho22;
    m(2, 2) = rho33;
    m(3, 3) = rho44;
    m(0, 3) = m(3, 0) = rho14;
    m(1, 2) = m(2, 1) = rho23;
    return m;
  }

  TwoQubitState state() const { return TwoQubitState::from_matrix(matrix()); }
};

/// X-state with real coherences of arbitrary sign, brought to the
/// non-negative form by local diagonal phases: S (x) S flips rho14 alone and
/// Z (x) 1 flips both. Local unitaries leave every correlation measure here
/// unchanged.
inline XState x_state_from_signed(double r11, double r22, double r33, double r44,
                                  double r14, double r23) {
  return XState::make(r11, r22, r33, r44, std::abs(r14), std::abs(r23));
}

class NotXShapedError : public std::runtime_error {
 public:
  NotXShapedError(double largest_off_pattern, const std::string& reason)
      : std::runtime_error("state is not X-shaped: " + reason),
        largest_(largest_off_pattern) {}
  double largest_off_pattern() const { return largest_; }

 private:
  double largest_;
};

/// Reads an X-state off a two-qubit state. Entries outside the X pattern must
/// be below `tol` in magnitude and the coherences real and non-negative; no
/// basis change is attempted.
inline XState as_x_state(const TwoQubitState& s, double tol) {
  static constexpr std::array<std::pair<int, int>, 8> off_pattern{
      {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}};
  const auto& m = s.matrix();
  double largest = 0.0;
  for (auto [i, j] : off_pattern) largest = std::max(largest, std::abs(m(i, j)));
  if (largest >= tol) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "largest off-pattern magnitude %.3e", largest);
    throw NotXShapedError(largest, buf);
  }
  const cplx c14 = m(0, 3);
  const cplx c23 = m(1, 2);
  const double bad_phase = std::max({std::abs(c14.imag()), std::abs(c23.imag()),
                                     -c14.real(), -c23.real()});
  if (bad_phase >= tol) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "coherence not real non-negative (deviation %.3e)", bad_phase);
    throw NotXShapedError(largest, buf);
  }
  return XState::make(m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(),
                      std::max(0.0, c14.real()), std::max(0.0, c23.real()));
}

namespace states {

inline TwoQubitState maximally_mixed() {
  return TwoQubitState::from_matrix(Eigen::Matrix4cd::Identity() / 4.0);
}

/// (|00> + |11>) / sqrt 2.
inline TwoQubitState bell() { return TwoQubitState::pure(Eigen::Vector4cd(1, 0, 0, 1)); }

/// (|00><00| + |11><11|) / 2.
inline TwoQubitState classically_correlated() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = m(3, 3) = 0.5;
  return TwoQubitState::from_matrix(m);
}

/// p |Phi+><Phi+| + (1 - p) 1/4.
inline TwoQubitState werner(double p) {
  return TwoQubitState::from_matrix(p * bell().matrix() +
                                    (1.0 - p) * Eigen::Matrix4cd::Identity() / 4.0);
}

}  // namespace states

}  // namespace tomo
