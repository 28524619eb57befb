// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dudc {

/// Column-oriented numeric table for one figure, with a provenance block
/// (seed, parameters, tolerances, version) sufficient to reproduce the file
/// bit-for-bit.
struct FigureDataset {
  std::string figure_id;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;

  void add_row(std::vector<double> row) {
    if (row.size() != columns.size())
      throw std::invalid_argument("FigureDataset: row width does not match columns");
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("FigureDataset: non-finite value in row");
    rows.push_back(std::move(row));
  }
};

namespace detail {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Plain CSV with a '#'-prefixed provenance header. Values are written with
/// 17 significant digits so parsing recovers them exactly.
inline void write_csv(const std::string& path, const FigureDataset& d) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "# figure = " << d.figure_id << "\n";
  for (const auto& [k, v] : d.provenance) out << "# " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < d.columns.size(); ++i)
    out << d.columns[i] << (i + 1 < d.columns.size() ? "," : "");
  out << "\n";
  for (const auto& row : d.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << detail::format_g17(row[i]) << (i + 1 < row.size() ? "," : "");
    out << "\n";
  }
  if (!out) throw std::runtime_error("write_csv: write failure on " + path);
}

inline FigureDataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  FigureDataset d;
  std::string line;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        const std::string key = detail::trim(line.substr(1, eq - 1));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key == "figure")
          d.figure_id = val;
        else
          d.provenance.emplace_back(key, val);
      }
      continue;
    }
    std::stringstream ss(line);
    std::string tok;
    if (!header_done) {
      while (std::getline(ss, tok, ',')) d.columns.push_back(detail::trim(tok));
      header_done = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) row.push_back(std::strtod(tok.c_str(), nullptr));
    d.add_row(std::move(row));
  }
  return d;
}

}  // namespace dudc
