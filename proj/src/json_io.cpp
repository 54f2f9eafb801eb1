/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "threshrep/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace threshrep {

ordered_json matrix_to_json(const CMat& m) {
  ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  ordered_json data = ordered_json::array();
  for (long i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (long c = 0; c < m.cols(); ++c)
      row.push_back({m(i, c).real(), m(i, c).imag()});
    data.push_back(std::move(row));
  }
  j["data"] = std::move(data);
  return j;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

void check_keys(const ordered_json& j, const std::set<std::string>& allowed,
                const std::set<std::string>& required, const std::string& where) {
  if (!j.is_object()) bad(where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) bad(where + ": unknown field '" + key + "'");
  for (const auto& key : required)
    if (!j.contains(key)) bad(where + ": missing field '" + key + "'");
}

long get_long(const ordered_json& j, const std::string& key, const std::string& where) {
  if (!j.at(key).is_number_integer()) bad(where + ": '" + key + "' must be an integer");
  return j.at(key).get<long>();
}

std::vector<int> get_dims(const ordered_json& j, const std::string& key) {
  if (!j.at(key).is_array()) bad("'" + key + "' must be an array");
  std::vector<int> dims;
  for (const auto& e : j.at(key)) {
    if (!e.is_number_integer() || e.get<long>() < 1)
      bad("'" + key + "' entries must be positive integers");
    dims.push_back(e.get<int>());
  }
  return dims;
}

}  // namespace

CMat matrix_from_json(const ordered_json& j) {
  check_keys(j, {"rows", "cols", "data"}, {"rows", "cols", "data"}, "matrix");
  long rows = get_long(j, "rows", "matrix");
  long cols = get_long(j, "cols", "matrix");
  if (rows < 1 || cols < 1) bad("matrix: dimensions must be positive");
  const auto& data = j.at("data");
  if (!data.is_array() || static_cast<long>(data.size()) != rows)
    bad("matrix: 'data' must have 'rows' rows");
  CMat m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    const auto& row = data.at(i);
    if (!row.is_array() || static_cast<long>(row.size()) != cols)
      bad("matrix: row length must equal 'cols'");
    for (long c = 0; c < cols; ++c) {
      const auto& e = row.at(c);
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() || !e.at(1).is_number())
        bad("matrix: entries must be [re, im] number pairs");
      m(i, c) = complexd(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

ordered_json protocol_to_json(const ProtocolSpec& p) {
  ordered_json j;
  j["version"] = 1;
  j["r"] = p.r;
  j["x_dims"] = p.x_dims;
  j["y_dims"] = p.y_dims;
  j["z_dims"] = p.z_dims;
  j["rho"] = matrix_to_json(p.rho.op.m);
  ordered_json psi = ordered_json::array();
  for (const auto& c : p.psi) psi.push_back(matrix_to_json(c.matrix));
  j["psi"] = std::move(psi);
  j["p0"] = matrix_to_json(p.povm.p0);
  j["p1"] = matrix_to_json(p.povm.p1);
  return j;
}

ProtocolSpec protocol_from_json(const ordered_json& j) {
  std::set<std::string> fields = {"version", "r",   "x_dims", "y_dims", "z_dims",
                                 "rho",     "psi", "p0",     "p1"};
  check_keys(j, fields, fields, "protocol");
  if (get_long(j, "version", "protocol") != 1) bad("protocol: unsupported version");
  long r = get_long(j, "r", "protocol");
  if (r < 1) bad("protocol: r must be >= 1");
  auto x_dims = get_dims(j, "x_dims");
  auto y_dims = get_dims(j, "y_dims");
  auto z_dims = get_dims(j, "z_dims");
  if (!j.at("psi").is_array() || static_cast<long>(j.at("psi").size()) != r - 1)
    bad("protocol: 'psi' must have r-1 entries");
  std::vector<CMat> psi;
  for (const auto& e : j.at("psi")) psi.push_back(matrix_from_json(e));
  try {
    return make_protocol(static_cast<int>(r), x_dims, y_dims, z_dims,
                         matrix_from_json(j.at("rho")), std::move(psi),
                         matrix_from_json(j.at("p0")), matrix_from_json(j.at("p1")));
  } catch (const DimensionError& e) {
    throw ValidationError(e.what());
  }
}

ProtocolSpec load_protocol(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return protocol_from_json(j);
}

void save_protocol(const ProtocolSpec& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << protocol_to_json(p).dump(2) << "\n";
}

std::vector<ScheduleRow> load_schedule_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty schedule file");
  auto strip = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
  };
  if (strip(line) != "n,a,b") throw ParseError("schedule header must be 'n,a,b'");
  std::vector<ScheduleRow> rows;
  while (std::getline(in, line)) {
    if (strip(line).empty()) continue;
    std::istringstream ss(line);
    std::string f1, f2, f3;
    if (!std::getline(ss, f1, ',') || !std::getline(ss, f2, ',') ||
        !std::getline(ss, f3))
      throw ParseError("schedule row needs three comma-separated fields");
    try {
      rows.push_back({std::stoi(strip(f1)), std::stod(strip(f2)), std::stod(strip(f3))});
    } catch (const std::exception&) {
      throw ParseError("schedule row is not numeric: " + line);
    }
  }
  return rows;
}

double round_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace threshrep
