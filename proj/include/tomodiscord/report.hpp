#pragma once

#include <optional>

#include "causal.hpp"
#include "measures.hpp"
#include "qstate.hpp"

namespace tomo {

struct AnalysisOptions {
  GridOptions grid{};
  bool canonical = true;  // run the two one-sided searches
};

/// Every scalar measure of one state. Asymmetries are empty when undefined.
struct CorrelationReport {
  double I = 0.0;
  double Dopt = 0.0;
  double Ddiag = 0.0;
  double Dsym = 0.0;
  double DcanA = 0.0;
  double DcanB = 0.0;
  double E = 0.0;
  double concurrence = 0.0;
  std::optional<double> dAB;
  std::optional<double> dDiag;
  std::optional<double> dOpt;
  std::optional<double> alpha;          // only for circuit approximations
  std::optional<Subclass> subclass;     // only for X-states
  SchemeResult opt;
  SchemeResult diag;
  SchemeResult sym;
};

namespace detail {

inline void fill_common(CorrelationReport& r, const TwoQubitState& state, const AnalysisOptions& o) {
  r.I = quantum_mutual_information(state);
  r.concurrence = concurrence(state);
  r.E = entanglement_from_concurrence(r.concurrence);
  r.dAB = quantum_asymmetry(state).d_ab;
  if (o.canonical) {
    r.DcanA = canonical_discord(state, Subsystem::A, o.grid);
    r.DcanB = canonical_discord(state, Subsystem::B, o.grid);
  }
}

}  // namespace detail

/// General two-qubit state: D^opt from the four-angle search.
inline CorrelationReport analyze(const TwoQubitState& state, const AnalysisOptions& o = {}) {
  CorrelationReport r;
  detail::fill_common(r, state, o);
  r.opt = optimal_scheme(state, o.grid);
  r.diag = diagonalizing_scheme(state, o.grid);
  r.sym = symmetrizing_scheme(state, o.grid);
  r.Dopt = r.opt.d;
  r.Ddiag = r.diag.d;
  r.Dsym = r.sym.d;
  r.dOpt = tomographic_asymmetry(r.opt.tomogram).d_ab;
  r.dDiag = tomographic_asymmetry(r.diag.tomogram).d_ab;
  try {
    r.subclass = x_optimal_discord(as_x_state(state, XState::tolerance)).subclass;
  } catch (const NotXShapedError&) {
  } catch (const ValidationError&) {
  }
  return r;
}

/// X-state: D^diag, D^sym and D^opt = min(D^diag, D^sym) in closed form.
inline CorrelationReport analyze_x(const XState& x, const AnalysisOptions& o = {}) {
  const TwoQubitState state = x.state();
  CorrelationReport r;
  detail::fill_common(r, state, o);
  const XOptimum xo = x_optimal_discord(x);
  r.opt = xo.best;
  r.opt.scheme = Scheme::Optimal;
  r.diag = xo.diag;
  r.sym = xo.sym;
  r.Dopt = xo.best.d;
  r.Ddiag = xo.diag.d;
  r.Dsym = xo.sym.d;
  r.dOpt = tomographic_asymmetry(xo.best.tomogram).d_ab;
  r.dDiag = tomographic_asymmetry(xo.diag.tomogram).d_ab;
  r.subclass = xo.subclass;
  return r;
}

}  // namespace tomo
