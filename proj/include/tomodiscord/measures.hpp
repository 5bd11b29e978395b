#pragma once

// Tomographic discord under the optimal, diagonalizing and symmetrizing
// measurement schemes, canonical (one-sided) discord, concurrence and
// entanglement of formation.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "numeric.hpp"
#include "qstate.hpp"
#include "search.hpp"
#include "tomography.hpp"

namespace tomo {

enum class Scheme { Optimal, Diagonalizing, Symmetrizing };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::Optimal: return "opt";
    case Scheme::Diagonalizing: return "diag";
    case Scheme::Symmetrizing: return "sym";
  }
  return "?";
}

struct SchemeResult {
  Scheme scheme = Scheme::Optimal;
  MeasurementSetting setting{};
  Tomogram tomogram{};
  TomographicEntropies entropies{};
  double mutual_information = 0.0;  // I of the state the scheme was run on
  double j = 0.0;                   // tomographic mutual information at `setting`
  double d = 0.0;                   // I - J
};

namespace detail {

// Picks the representative of {n, -n} with a non-negative leading component
// (z first, then x, then y), so reported angles satisfy theta <= pi/2.
inline Eigen::Vector3d canonical_axis(Eigen::Vector3d n) {
  n.normalize();
  constexpr double eps = 1e-12;
  for (int k : {2, 0, 1}) {
    if (n(k) > eps) return n;
    if (n(k) < -eps) return -n;
  }
  return n;
}

struct GridAxis {
  Eigen::Vector3d n;
  double along;   // Bloch-vector component along n
  double h;       // marginal tomographic entropy
  Eigen::Vector3d tilted;  // C^T n for side A; unused for B
};

inline SchemeResult finish(const TwoQubitState& state, Scheme scheme, const Eigen::Vector3d& na,
                           const Eigen::Vector3d& nb) {
  SchemeResult r;
  r.scheme = scheme;
  r.setting = setting_from_axes(canonical_axis(na), canonical_axis(nb));
  r.tomogram = tomogram(state, r.setting);
  r.entropies = tomographic_entropies(r.tomogram);
  r.mutual_information = quantum_mutual_information(state);
  r.j = r.entropies.j;
  r.d = r.mutual_information - r.j;
  return r;
}

}  // namespace detail

struct AxisPair {
  Eigen::Vector3d a;
  Eigen::Vector3d b;
  double j;
};

/// Maximizes the tomographic mutual information over the product of two axis
/// families: exhaustive grid, then coordinate ascent from the best
/// `opt.restarts` grid points.
inline AxisPair maximize_tomographic_information(const BlochData& d, const AxisFamily& fa,
                                                 const AxisFamily& fb, const GridOptions& opt) {
  const auto grid_a = fa.grid(opt);
  const auto grid_b = fb.grid(opt);

  std::vector<detail::GridAxis> axes_a;
  axes_a.reserve(grid_a.size());
  for (const auto& p : grid_a) {
    const Eigen::Vector3d n = fa.axis(p.data());
    const double ca = d.a.dot(n);
    axes_a.push_back({n, ca, binary_entropy(0.5 * (1.0 + ca)), d.c.transpose() * n});
  }
  std::vector<detail::GridAxis> axes_b;
  axes_b.reserve(grid_b.size());
  for (const auto& p : grid_b) {
    const Eigen::Vector3d n = fb.axis(p.data());
    const double cb = d.b.dot(n);
    axes_b.push_back({n, cb, binary_entropy(0.5 * (1.0 + cb)), Eigen::Vector3d::Zero()});
  }

  // Flattened B data for the hot loop.
  const std::size_t nb = axes_b.size();
  std::vector<double> bx(nb), by(nb), bz(nb), bal(nb), bh(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    bx[k] = axes_b[k].n.x();
    by[k] = axes_b[k].n.y();
    bz[k] = axes_b[k].n.z();
    bal[k] = axes_b[k].along;
    bh[k] = axes_b[k].h;
  }

  std::vector<double> bvar(nb);
  for (std::size_t k = 0; k < nb; ++k) bvar[k] = 1.0 - bal[k] * bal[k];

  // For two binary outcomes J <= log2(1 + phi^2) <= phi^2 / ln 2 with phi the
  // correlation coefficient, and J <= min(H_A, H_B). Pairs whose bound cannot
  // beat the current top-K threshold are skipped; the kept set is unchanged.
  constexpr double ln2 = std::numbers::ln2;
  TopK top(opt.restarts);
  double threshold = top.threshold();
  for (std::size_t ia = 0; ia < axes_a.size(); ++ia) {
    const auto& ax = axes_a[ia];
    const double ca = ax.along;
    const double avar = 1.0 - ca * ca;
    if (ax.h <= threshold) continue;
    const double tx = ax.tilted.x(), ty = ax.tilted.y(), tz = ax.tilted.z();
    for (std::size_t ib = 0; ib < nb; ++ib) {
      const double cb = bal[ib];
      const double cc = tx * bx[ib] + ty * by[ib] + tz * bz[ib];
      const double cov = cc - ca * cb;
      if (cov * cov <= threshold * ln2 * avar * bvar[ib] || bh[ib] <= threshold) continue;
      const double hab = entropy_term(0.25 * (1.0 + ca + cb + cc)) +
                         entropy_term(0.25 * (1.0 + ca - cb - cc)) +
                         entropy_term(0.25 * (1.0 - ca + cb - cc)) +
                         entropy_term(0.25 * (1.0 - ca - cb + cc));
      const double j = ax.h + bh[ib] - hab;
      if (j > threshold) {
        top.offer(j, ia * nb + ib);
        threshold = top.threshold();
      }
    }
  }

  const int arity_a = fa.arity();
  const std::size_t dims = static_cast<std::size_t>(arity_a + fb.arity());
  auto objective = [&](const std::array<double, max_search_dims>& x) {
    const Eigen::Vector3d na = fa.axis(x.data());
    const Eigen::Vector3d nbv = fb.axis(x.data() + arity_a);
    const auto p = tomogram_from_axes(d, na, nbv);
    const double ha = binary_entropy(p[0] + p[1]);
    const double hb = binary_entropy(p[0] + p[2]);
    return ha + hb - shannon_entropy(p);
  };
  std::array<double, max_search_dims> steps{};
  {
    const auto sa = fa.initial_steps(opt);
    const auto sb = fb.initial_steps(opt);
    for (int k = 0; k < arity_a; ++k) steps[k] = sa[k];
    for (int k = 0; k < fb.arity(); ++k) steps[arity_a + k] = sb[k];
  }

  SearchPoint best;
  for (const auto& [value, index] : top.items()) {
    SearchPoint start;
    const auto& pa = grid_a[index / nb];
    const auto& pb = grid_b[index % nb];
    for (int k = 0; k < arity_a; ++k) start.x[k] = pa[k];
    for (int k = 0; k < fb.arity(); ++k) start.x[arity_a + k] = pb[k];
    start.value = objective(start.x);
    const SearchPoint refined = coordinate_ascent(objective, start, dims, steps, opt.min_step);
    if (refined.value > best.value) best = refined;
  }
  return {fa.axis(best.x.data()), fb.axis(best.x.data() + arity_a), best.value};
}

/// Setting maximizing J over all four Bloch angles.
inline SchemeResult optimal_scheme(const TwoQubitState& state, const GridOptions& opt = {}) {
  const auto d = bloch_data(state);
  const auto best =
      maximize_tomographic_information(d, AxisFamily::sphere(), AxisFamily::sphere(), opt);
  return detail::finish(state, Scheme::Optimal, best.a, best.b);
}

/// Marginal eigenvalue gap below which a side's diagonalizing basis is ambiguous.
inline constexpr double degenerate_gap = 1e-9;

/// Local bases diagonalizing both marginals; J is maximized over whatever
/// freedom remains when a marginal is degenerate.
inline SchemeResult diagonalizing_scheme(const TwoQubitState& state, const GridOptions& opt = {}) {
  const auto d = bloch_data(state);
  auto family = [](const Eigen::Vector3d& r) {
    return r.norm() >= degenerate_gap ? AxisFamily::fixed(r) : AxisFamily::sphere();
  };
  const auto best = maximize_tomographic_information(d, family(d.a), family(d.b), opt);
  return detail::finish(state, Scheme::Diagonalizing, best.a, best.b);
}

/// Local bases making both marginal tomograms uniform (axes orthogonal to the
/// marginal Bloch vectors), maximizing J over that family. A maximally mixed
/// marginal is uniform on every axis; that side then uses the equator of the
/// computational basis, as for X-states.
inline SchemeResult symmetrizing_scheme(const TwoQubitState& state, const GridOptions& opt = {}) {
  const auto d = bloch_data(state);
  auto family = [](const Eigen::Vector3d& r) {
    return AxisFamily::circle(r.norm() >= degenerate_gap ? r : Eigen::Vector3d::UnitZ());
  };
  const auto best = maximize_tomographic_information(d, family(d.a), family(d.b), opt);
  return detail::finish(state, Scheme::Symmetrizing, best.a, best.b);
}

struct CanonicalDiscord {
  Subsystem measured;
  double discord;      // I - max J
  double classical;    // max J over the one-sided measurement
  Eigen::Vector3d axis;
};

namespace detail {

inline double qubit_entropy_from_bloch(double radius) {
  return binary_entropy(0.5 * (1.0 + std::min(radius, 1.0)));
}

// Mutual information after a projective measurement along `n` on the measured
// side: S_other - sum_k p_k S(rho_other | k).
inline double post_measurement_information(const BlochData& d, Subsystem measured,
                                           const Eigen::Vector3d& n, double s_other) {
  const Eigen::Vector3d& own = measured == Subsystem::B ? d.b : d.a;
  const Eigen::Vector3d& other = measured == Subsystem::B ? d.a : d.b;
  const Eigen::Vector3d cn = measured == Subsystem::B ? Eigen::Vector3d(d.c * n)
                                                      : Eigen::Vector3d(d.c.transpose() * n);
  const double along = own.dot(n);
  double conditional = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double weight = 1.0 + sign * along;  // 2 p_k
    if (weight <= 1e-15) continue;
    const Eigen::Vector3d r = (other + sign * cn) / weight;
    conditional += 0.5 * weight * qubit_entropy_from_bloch(r.norm());
  }
  return s_other - conditional;
}

}  // namespace detail

/// D^(side) = I - max over projective measurements on `side` of the mutual
/// information of the post-measurement state.
inline CanonicalDiscord canonical_discord_detail(const TwoQubitState& state, Subsystem side,
                                                 const GridOptions& opt = {}) {
  const auto d = bloch_data(state);
  const auto e = entropies(state);
  const double info = e.a + e.b - e.ab;
  const double s_other = side == Subsystem::B ? e.a : e.b;
  const auto family = AxisFamily::sphere();
  const auto grid = family.grid(opt);

  TopK top(opt.restarts);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    top.offer(detail::post_measurement_information(d, side, family.axis(grid[k].data()), s_other),
              k);
  }
  auto objective = [&](const std::array<double, max_search_dims>& x) {
    return detail::post_measurement_information(d, side, family.axis(x.data()), s_other);
  };
  const auto s = family.initial_steps(opt);
  SearchPoint best;
  for (const auto& [value, index] : top.items()) {
    SearchPoint start;
    start.x[0] = grid[index][0];
    start.x[1] = grid[index][1];
    start.value = value;
    const auto refined = coordinate_ascent(objective, start, 2, {s[0], s[1], 0.0, 0.0}, opt.min_step);
    if (refined.value > best.value) best = refined;
  }
  return {side, info - best.value, best.value, family.axis(best.x.data())};
}

inline double canonical_discord(const TwoQubitState& state, Subsystem side,
                                const GridOptions& opt = {}) {
  return canonical_discord_detail(state, side, opt).discord;
}

/// Wootters concurrence from the spectrum of rho (sy (x) sy) rho* (sy (x) sy).
inline double concurrence(const TwoQubitState& state) {
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  // sigma_y (x) sigma_y is real: anti-diagonal (-1, 1, 1, -1).
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Eigen::Matrix4cd& rho = state.matrix();
  const Eigen::Matrix4cd product = rho * flip * rho.conjugate() * flip;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(product, false);
  std::array<double, 4> lambda{};
  for (int k = 0; k < 4; ++k) lambda[k] = std::sqrt(std::max(0.0, es.eigenvalues()(k).real()));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

/// E = h(1/2 + sqrt(1 - C^2) / 2), in bits.
inline double entanglement_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 + 0.5 * std::sqrt(1.0 - c * c));
}

inline double entanglement_of_formation(const TwoQubitState& state) {
  return entanglement_from_concurrence(concurrence(state));
}

/// Which X-state scheme attains the optimum.
enum class Subclass { Asymmetric, Symmetric };

inline const char* to_string(Subclass s) {
  return s == Subclass::Asymmetric ? "asymmetric" : "symmetric";
}

/// |D^diag - D^sym| below this resolves to the diagonalizing scheme.
inline constexpr double scheme_tie = 1e-9;

struct XOptimum {
  SchemeResult best;
  SchemeResult diag;
  SchemeResult sym;
  Subclass subclass;
};

namespace detail {

inline SchemeResult from_tomogram(Scheme scheme, const Tomogram& t, double info) {
  SchemeResult r;
  r.scheme = scheme;
  r.setting = t.setting;
  r.tomogram = t;
  r.entropies = tomographic_entropies(t);
  r.mutual_information = info;
  r.j = r.entropies.j;
  r.d = info - r.j;
  return r;
}

}  // namespace detail

/// D^opt = min(D^diag, D^sym) from the closed-form diagonalizing and
/// symmetrizing tomograms.
inline XOptimum x_optimal_discord(const XState& x) {
  const double info = quantum_mutual_information(x.state());
  XOptimum out;
  out.diag = detail::from_tomogram(Scheme::Diagonalizing, diag_tomogram(x), info);
  out.sym = detail::from_tomogram(Scheme::Symmetrizing, sym_tomogram(x), info);
  out.subclass = out.diag.d < out.sym.d + scheme_tie ? Subclass::Asymmetric : Subclass::Symmetric;
  out.best = out.subclass == Subclass::Asymmetric ? out.diag : out.sym;
  return out;
}

}  // namespace tomo
