#pragma once

// State files (JSON), CSV rows and range arguments for the command-line tool.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qstate.hpp"

namespace tomo {

/// Unreadable or malformed input files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"label": "...", "rho": [[{"re": 0.5, "im": 0}, ...], ...]}, basis |00>, |01>, |10>, |11>.
struct StateFile {
  std::string label;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
};

inline StateFile parse_state_file(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("state file is not valid JSON: ") + e.what());
  }
  StateFile out;
  try {
    if (doc.contains("label")) out.label = doc.at("label").get<std::string>();
    const auto& rows = doc.at("rho");
    if (!rows.is_array() || rows.size() != 4) throw IoError("state file: rho must have 4 rows");
    for (int i = 0; i < 4; ++i) {
      const auto& row = rows[i];
      if (!row.is_array() || row.size() != 4) throw IoError("state file: every row of rho needs 4 entries");
      for (int j = 0; j < 4; ++j) {
        const auto& z = row[j];
        out.rho(i, j) = cplx(z.at("re").get<double>(), z.value("im", 0.0));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("state file: ") + e.what());
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

inline StateFile read_state_file(const std::string& path) { return parse_state_file(read_text_file(path)); }

inline std::string state_file_json(const StateFile& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) row.push_back({{"re", s.rho(i, j).real()}, {"im", s.rho(i, j).imag()}});
    rows.push_back(row);
  }
  nlohmann::json doc{{"label", s.label}, {"rho", rows}};
  return doc.dump(2) + "\n";
}

namespace csv {

inline constexpr const char* undefined = "undefined";
inline constexpr int version = 1;

inline std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string number(const std::optional<double>& v) { return v ? number(*v) : undefined; }

inline std::string header_comment(const std::string& command) {
  return "# tomodiscord " + command + " v" + std::to_string(version) + "\n";
}

inline std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) line += ',';
    line += cells[k];
  }
  return line + "\n";
}

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace csv

/// "a:b:step" or a single value. Both ends are included when step divides
/// b - a evenly (to 1e-9 of a step).
inline std::vector<double> parse_range(const std::string& text) {
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("bad number '" + s + "' in range '" + text + "'");
    return v;
  };
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() == 1) return {to_double(parts[0])};
  if (parts.size() != 3) throw std::invalid_argument("range must be a:b:step, got '" + text + "'");
  const double a = to_double(parts[0]), b = to_double(parts[1]), step = to_double(parts[2]);
  if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
  if (b < a) throw std::invalid_argument("range end is below its start");
  const double spans = (b - a) / step;
  const auto count = static_cast<long>(std::floor(spans + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count) + 1);
  for (long k = 0; k <= count; ++k) {
    const double v = a + static_cast<double>(k) * step;
    // -0.5 + 5 * 0.1 lands on 1e-16, not on the resonance.
    out.push_back(std::abs(v) < 1e-9 * step ? 0.0 : v);
  }
  if (std::abs(spans - std::round(spans)) <= 1e-9) out.back() = b;
  return out;
}

}  // namespace tomo
