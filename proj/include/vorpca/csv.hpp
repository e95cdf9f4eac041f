// Copyright 2026 The vorpca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Comma-separated numeric tables: one row per data point, optional single
// header row, values written with 17 significant digits so a write/read
// round trip is exact.

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vorpca/error.hpp"
#include "vorpca/linalg.hpp"

namespace vorpca {

/// Shortest "%.17g" rendering of a double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
  std::string_view s = trim(cell);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("column " + std::to_string(column + 1) + ": '" + std::string(trim(cell)) +
                         "' is not a number",
                     line);
  if (!std::isfinite(v))
    throw ParseError("column " + std::to_string(column + 1) + ": non-finite value", line);
  return v;
}

}  // namespace detail

/// Parses a rectangular numeric table. Blank lines are ignored. With
/// `header` set, the first non-blank line is skipped.
inline DataMatrix read_csv(std::istream& in, bool header = false) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool header_pending = header;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::size_t count = 0;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      values.push_back(detail::parse_cell(rest.substr(0, comma), line_no, count));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0)
      cols = count;
    else if (count != cols)
      throw ParseError("expected " + std::to_string(cols) + " columns, found " +
                           std::to_string(count),
                       line_no);
    ++rows;
  }
  if (rows == 0) throw ParseError("no data rows", 0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * cols + j];
  return DataMatrix(std::move(m));
}

inline DataMatrix read_csv(const std::string& path, bool header = false) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  try {
    return read_csv(in, header);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

inline void write_csv(std::ostream& out, const Eigen::MatrixXd& m, bool header = false) {
  if (header) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << 'x' << j;
    out << '\n';
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
}

inline void write_csv(const std::string& path, const DataMatrix& x, bool header = false) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_csv(out, x.values(), header);
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace vorpca
