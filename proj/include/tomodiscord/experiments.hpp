#pragma once

// Row builders for the random study and the circuit sweeps.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "circuits.hpp"
#include "io.hpp"
#include "randgen.hpp"
#include "report.hpp"

namespace tomo {

/// out[i] = f(i) for i < count on `jobs` threads. The first exception thrown
/// by any call is rethrown after all workers stop.
template <class F>
auto parallel_map(std::size_t count, int jobs, F f) -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out(count);
  const std::size_t workers = std::clamp<std::size_t>(jobs < 1 ? 1 : static_cast<std::size_t>(jobs), 1,
                                                      std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_lock;
  auto work = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_lock);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

using Row = std::vector<std::string>;

enum class StateKind { X, Mixed };

struct RandomStudyRow {
  std::size_t index = 0;
  CorrelationReport report;
  std::optional<double> residual;  // |Dopt - min(Ddiag, Dsym)|, X-states only
};

/// Row i draws its state from substream i of `seed`.
inline RandomStudyRow random_study_row(std::uint64_t seed, std::size_t index, StateKind kind,
                                       const AnalysisOptions& o) {
  SeedStream rng = SeedStream(seed).substream(index);
  RandomStudyRow row;
  row.index = index;
  if (kind == StateKind::X) {
    const XState x = random_x_state(rng);
    row.report = analyze(x.state(), o);
    const XOptimum xo = x_optimal_discord(x);
    row.residual = std::abs(row.report.Dopt - xo.best.d);
    row.report.subclass = xo.subclass;
  } else {
    row.report = analyze(random_mixed_state(rng), o);
  }
  return row;
}

inline const std::vector<std::string>& random_study_columns() {
  static const std::vector<std::string> c{"index", "I",   "Dopt", "Ddiag", "Dsym",     "DcanA",   "DcanB",
                                          "E",     "dAB", "dOpt", "dDiag", "residual", "subclass"};
  return c;
}

inline Row format(const RandomStudyRow& r) {
  const auto& m = r.report;
  return {std::to_string(r.index), csv::number(m.I),     csv::number(m.Dopt),     csv::number(m.Ddiag),
          csv::number(m.Dsym),     csv::number(m.DcanA), csv::number(m.DcanB),    csv::number(m.E),
          csv::number(m.dAB),      csv::number(m.dOpt),  csv::number(m.dDiag),    csv::number(r.residual),
          m.subclass ? to_string(*m.subclass) : csv::undefined};
}

/// One point of a circuit sweep. Rows outside the stable region carry a
/// status instead of measures.
struct CircuitRow {
  CircuitParams params;
  std::optional<CorrelationReport> report;
  std::optional<AsymmetryReport> tomographic;  // diagonalizing-scheme asymmetry
  std::optional<AsymmetryReport> quantum;
  std::string status = "ok";
};

enum class CircuitState { Ground, Thermal };

inline CircuitRow circuit_row(const CircuitParams& p, CircuitState which, const CircuitOptions& co,
                              const AnalysisOptions& o) {
  CircuitRow row;
  row.params = p;
  TwoQubitApproximation approx;
  try {
    approx = which == CircuitState::Ground ? ground_state_2qb(p, co) : thermal_state_2qb(p, co);
  } catch (const UnstableCoupling&) {
    row.status = "unstable_coupling";
    return row;
  } catch (const InvalidCircuitParams&) {
    row.status = "invalid_params";
    return row;
  }
  CorrelationReport r = analyze_x(approx.state, o);
  r.alpha = approx.alpha;
  row.tomographic = tomographic_asymmetry(r.diag.tomogram);
  row.quantum = quantum_asymmetry(approx.state.state());
  row.report = r;
  if (approx.ground_fallback) row.status = "ground_fallback";
  return row;
}

inline const std::vector<std::string>& ground_sweep_columns() {
  static const std::vector<std::string> c{"g", "deltaOmega", "I",     "Dopt",     "Ddiag",
                                          "Dsym", "E",       "alpha", "subclass", "status"};
  return c;
}

inline const std::vector<std::string>& thermal_sweep_columns() {
  static const std::vector<std::string> c{"T",     "g",     "deltaOmega", "I",   "Dopt",  "Ddiag",
                                          "Dsym",  "DcanA", "DcanB",      "E",   "dAB",   "dDiag",
                                          "alpha", "subclass", "status"};
  return c;
}

inline const std::vector<std::string>& asymmetry_sweep_columns() {
  static const std::vector<std::string> c{"deltaOmega", "g",   "T",   "dAB", "dTomDiag",
                                          "DcanA",      "DcanB", "iAB", "iBA", "status"};
  return c;
}

namespace detail {

template <class Get>
std::string cell(const CircuitRow& r, Get get) {
  return r.report ? csv::number(get(*r.report)) : csv::undefined;
}

inline std::string subclass_cell(const CircuitRow& r) {
  return r.report && r.report->subclass ? to_string(*r.report->subclass) : csv::undefined;
}

}  // namespace detail

inline Row format_ground(const CircuitRow& r) {
  using detail::cell;
  return {csv::number(r.params.g),
          csv::number(r.params.delta_omega),
          cell(r, [](auto& m) { return m.I; }),
          cell(r, [](auto& m) { return m.Dopt; }),
          cell(r, [](auto& m) { return m.Ddiag; }),
          cell(r, [](auto& m) { return m.Dsym; }),
          cell(r, [](auto& m) { return m.E; }),
          cell(r, [](auto& m) { return m.alpha; }),
          detail::subclass_cell(r),
          r.status};
}

inline Row format_thermal(const CircuitRow& r) {
  using detail::cell;
  return {csv::number(r.params.temperature),
          csv::number(r.params.g),
          csv::number(r.params.delta_omega),
          cell(r, [](auto& m) { return m.I; }),
          cell(r, [](auto& m) { return m.Dopt; }),
          cell(r, [](auto& m) { return m.Ddiag; }),
          cell(r, [](auto& m) { return m.Dsym; }),
          cell(r, [](auto& m) { return m.DcanA; }),
          cell(r, [](auto& m) { return m.DcanB; }),
          cell(r, [](auto& m) { return m.E; }),
          cell(r, [](auto& m) { return m.dAB; }),
          cell(r, [](auto& m) { return m.dDiag; }),
          cell(r, [](auto& m) { return m.alpha; }),
          detail::subclass_cell(r),
          r.status};
}

inline Row format_asymmetry(const CircuitRow& r) {
  using detail::cell;
  const auto opt = [](const std::optional<AsymmetryReport>& a, auto member) -> std::optional<double> {
    if (!a) return std::nullopt;
    return (*a).*member;
  };
  return {csv::number(r.params.delta_omega),
          csv::number(r.params.g),
          csv::number(r.params.temperature),
          csv::number(opt(r.quantum, &AsymmetryReport::d_ab)),
          csv::number(opt(r.tomographic, &AsymmetryReport::d_ab)),
          cell(r, [](auto& m) { return m.DcanA; }),
          cell(r, [](auto& m) { return m.DcanB; }),
          csv::number(opt(r.quantum, &AsymmetryReport::i_ab)),
          csv::number(opt(r.quantum, &AsymmetryReport::i_ba)),
          r.status};
}

}  // namespace tomo
