// tomodiscord: correlation measures of two-qubit states and coupled LC circuits.
//
// Exit codes: 0 success, 1 invalid input, 2 I/O failure, 3 quadrature did not converge.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tomodiscord.hpp"

namespace {

using namespace tomo;

enum ExitCode { Ok = 0, Invalid = 1, Io = 2, NotConverged = 3 };

struct Common {
  int grid_theta = GridOptions{}.theta_divisions;
  int grid_phi = GridOptions{}.phi_divisions;
  int max_level = CircuitOptions{}.max_level;
  int quad_nodes = CircuitOptions{}.nodes;
  int jobs = 1;
  std::string out;

  AnalysisOptions analysis() const {
    AnalysisOptions o;
    o.grid.theta_divisions = grid_theta;
    o.grid.phi_divisions = grid_phi;
    return o;
  }
  CircuitOptions circuit() const { return {max_level, quad_nodes}; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--grid-theta", c.grid_theta, "theta grid divisions of [0, pi]")->check(CLI::PositiveNumber);
  cmd->add_option("--grid-phi", c.grid_phi, "phi grid divisions of [0, pi]")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", c.jobs, "worker threads; output order does not depend on it")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "CSV output path (default: standard output)");
}

void add_circuit(CLI::App* cmd, Common& c) {
  cmd->add_option("--max-level", c.max_level, "highest number state per mode in the overlaps")
      ->check(CLI::Range(1, max_supported_level));
  cmd->add_option("--quad-nodes", c.quad_nodes, "Gauss-Hermite nodes per axis")->check(CLI::PositiveNumber);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  f.close();
  if (!f) throw IoError("cannot write " + path);
}

std::string table(const std::string& command, const std::vector<std::string>& columns,
                  const std::vector<Row>& rows) {
  std::string text = csv::header_comment(command) + csv::join(columns);
  for (const auto& r : rows) text += csv::join(r);
  return text;
}

std::vector<double> values(const std::string& range, double fixed) {
  return range.empty() ? std::vector<double>{fixed} : parse_range(range);
}

int cmd_measures(const std::string& path, const Common& c) {
  const StateFile file = read_state_file(path);
  const TwoQubitState state = TwoQubitState::from_matrix(file.rho);
  const CorrelationReport r = analyze(state, c.analysis());
  std::ostringstream s;
  if (!file.label.empty()) s << "label " << file.label << "\n";
  auto line = [&](const char* name, const std::string& v) { s << name << " " << v << "\n"; };
  line("I", csv::number(r.I));
  line("Dopt", csv::number(r.Dopt));
  line("Ddiag", csv::number(r.Ddiag));
  line("Dsym", csv::number(r.Dsym));
  line("DcanA", csv::number(r.DcanA));
  line("DcanB", csv::number(r.DcanB));
  line("E", csv::number(r.E));
  line("concurrence", csv::number(r.concurrence));
  line("dAB", csv::number(r.dAB));
  line("dOpt", csv::number(r.dOpt));
  line("dDiag", csv::number(r.dDiag));
  line("subclass", r.subclass ? to_string(*r.subclass) : csv::undefined);
  for (const SchemeResult* sr : {&r.opt, &r.diag, &r.sym}) {
    const auto& st = sr->setting;
    s << "setting." << to_string(sr->scheme) << " " << csv::number(st.theta_a) << " " << csv::number(st.phi_a)
      << " " << csv::number(st.theta_b) << " " << csv::number(st.phi_b) << "\n";
  }
  std::cout << s.str() << std::flush;
  if (!c.out.empty()) {
    const std::vector<std::string> columns{"I",   "Dopt", "Ddiag", "Dsym",  "DcanA",   "DcanB",
                                           "E",   "dAB",  "dOpt",  "dDiag", "subclass"};
    const Row row{csv::number(r.I),     csv::number(r.Dopt), csv::number(r.Ddiag), csv::number(r.Dsym),
                  csv::number(r.DcanA), csv::number(r.DcanB), csv::number(r.E),    csv::number(r.dAB),
                  csv::number(r.dOpt),  csv::number(r.dDiag),
                  r.subclass ? to_string(*r.subclass) : csv::undefined};
    write_output(c.out, table("measures", columns, {row}));
  }
  return Ok;
}

int cmd_random_study(std::size_t samples, const std::string& kind, std::uint64_t seed, const Common& c) {
  const StateKind k = kind == "x" ? StateKind::X : StateKind::Mixed;
  const AnalysisOptions o = c.analysis();
  const auto rows = parallel_map(samples, c.jobs, [&](std::size_t i) { return format(random_study_row(seed, i, k, o)); });
  write_output(c.out, table("random-study", random_study_columns(), rows));
  return Ok;
}

void warn_skipped(const std::vector<CircuitRow>& rows) {
  for (const auto& r : rows) {
    if (r.status != "ok") {
      std::cerr << "warning: g=" << csv::number(r.params.g) << " deltaOmega=" << csv::number(r.params.delta_omega)
                << " T=" << csv::number(r.params.temperature) << ": " << r.status << "\n";
    }
  }
}

std::vector<CircuitRow> sweep(const std::vector<CircuitParams>& points, CircuitState which, const Common& c) {
  const CircuitOptions co = c.circuit();
  const AnalysisOptions o = c.analysis();
  auto rows = parallel_map(points.size(), c.jobs, [&](std::size_t i) { return circuit_row(points[i], which, co, o); });
  warn_skipped(rows);
  return rows;
}

template <class Format>
std::vector<Row> formatted(const std::vector<CircuitRow>& rows, Format f) {
  std::vector<Row> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(f(r));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tomographic discord, canonical discord and entropic asymmetry of two-qubit states"};
  app.require_subcommand(1);
  Common common;

  auto* measures = app.add_subcommand("measures", "all measures of one state read from a JSON state file");
  std::string state_path;
  measures->add_option("state-file", state_path, "JSON file with label and rho[4][4] of {re, im}")->required();
  add_common(measures, common);

  auto* random = app.add_subcommand("random-study", "measures of seeded random states, one CSV row each");
  std::size_t samples = 3000;
  std::string kind = "x";
  std::uint64_t seed = 1;
  random->add_option("--samples", samples, "number of states")->check(CLI::PositiveNumber);
  random->add_option("--kind", kind, "x or mixed")->check(CLI::IsMember({"x", "mixed"}));
  random->add_option("--seed", seed, "root seed; row i uses substream i");
  add_common(random, common);

  const std::string range_help = "a:b:step, both ends included when step divides b - a";
  double g = 0.3, domega = 0.0, temperature = 0.2;
  std::string g_range, domega_range, t_range;

  auto* ground = app.add_subcommand("ground-sweep", "ground state in the two-qubit approximation");
  ground->add_option("--g", g, "coupling when --g-range is absent");
  ground->add_option("--domega", domega, "detuning when --domega-range is absent");
  ground->add_option("--g-range", g_range, range_help);
  ground->add_option("--domega-range", domega_range, range_help);
  add_common(ground, common);
  add_circuit(ground, common);

  auto* thermal = app.add_subcommand("thermal-sweep", "thermal state in the two-qubit approximation");
  thermal->add_option("--g", g, "coupling");
  thermal->add_option("--domega", domega, "detuning when --domega-range is absent");
  thermal->add_option("--T", temperature, "temperature when --T-range is absent");
  thermal->add_option("--T-range", t_range, range_help);
  thermal->add_option("--domega-range", domega_range, range_help);
  add_common(thermal, common);
  add_circuit(thermal, common);

  auto* asymmetry = app.add_subcommand("asymmetry-sweep", "entropic asymmetry of the thermal state vs detuning");
  asymmetry->add_option("--g", g, "coupling");
  asymmetry->add_option("--T", temperature, "temperature");
  asymmetry->add_option("--domega-range", domega_range, range_help)->required();
  add_common(asymmetry, common);
  add_circuit(asymmetry, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : Invalid;
  }

  try {
    if (measures->parsed()) return cmd_measures(state_path, common);
    if (random->parsed()) return cmd_random_study(samples, kind, seed, common);

    std::vector<CircuitParams> points;
    if (ground->parsed()) {
      for (double gv : values(g_range, g)) {
        for (double dw : values(domega_range, domega)) points.push_back({1.0, dw, gv, 0.0});
      }
      const auto rows = sweep(points, CircuitState::Ground, common);
      write_output(common.out, table("ground-sweep", ground_sweep_columns(), formatted(rows, format_ground)));
    } else if (thermal->parsed()) {
      for (double t : values(t_range, temperature)) {
        for (double dw : values(domega_range, domega)) points.push_back({1.0, dw, g, t});
      }
      const auto rows = sweep(points, CircuitState::Thermal, common);
      write_output(common.out, table("thermal-sweep", thermal_sweep_columns(), formatted(rows, format_thermal)));
    } else if (asymmetry->parsed()) {
      for (double dw : parse_range(domega_range)) points.push_back({1.0, dw, g, temperature});
      const auto rows = sweep(points, CircuitState::Thermal, common);
      write_output(common.out,
                   table("asymmetry-sweep", asymmetry_sweep_columns(), formatted(rows, format_asymmetry)));
    }
    return Ok;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Invalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Invalid;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Io;
  } catch (const QuadratureNotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return NotConverged;
  } catch (const CircuitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Invalid;
  }
}
