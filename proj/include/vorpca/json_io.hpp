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

// JSON output with fixed 17-significant-digit numbers, plus readers for the
// basis and planted-truth documents the CLI consumes.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vorpca/csv.hpp"
#include "vorpca/error.hpp"
#include "vorpca/instance.hpp"
#include "vorpca/linalg.hpp"
#include "vorpca/result.hpp"

namespace vorpca {

/// Streaming writer for one JSON object. Doubles use "%.17g"; non-finite
/// doubles become null.
class JsonObjectWriter {
 public:
  JsonObjectWriter() : out_("{") {}

  JsonObjectWriter& field(std::string_view key, std::string_view value) {
    return raw(key, nlohmann::json(std::string(value)).dump());
  }
  JsonObjectWriter& field(std::string_view key, const char* value) {
    return field(key, std::string_view(value));
  }
  JsonObjectWriter& field(std::string_view key, double value) { return raw(key, number(value)); }
  JsonObjectWriter& field(std::string_view key, std::uint64_t value) {
    return raw(key, std::to_string(value));
  }
  JsonObjectWriter& field(std::string_view key, bool value) {
    return raw(key, value ? "true" : "false");
  }
  template <class T>
  JsonObjectWriter& field(std::string_view key, const std::optional<T>& value) {
    if (!value) return raw(key, "null");
    return field(key, *value);
  }
  JsonObjectWriter& null_field(std::string_view key) { return raw(key, "null"); }

  JsonObjectWriter& indices(std::string_view key, const OutlierSet& s) {
    std::string v = "[";
    for (std::size_t i = 0; i < s.size(); ++i)
      v += (i ? "," : "") + std::to_string(s.indices()[i]);
    return raw(key, v + "]");
  }
  JsonObjectWriter& vector(std::string_view key, const Eigen::VectorXd& x) {
    return raw(key, array(x.data(), x.size()));
  }
  /// Matrix as a list of its columns (column-major nesting).
  JsonObjectWriter& columns(std::string_view key, const Eigen::MatrixXd& m) {
    std::string v = "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Eigen::VectorXd col = m.col(c);
      v += (c ? "," : "") + array(col.data(), col.size());
    }
    return raw(key, v + "]");
  }
  /// Inserts pre-rendered JSON.
  JsonObjectWriter& raw(std::string_view key, std::string_view json) {
    if (out_.size() > 1) out_ += ',';
    out_ += nlohmann::json(std::string(key)).dump();
    out_ += ':';
    out_ += json;
    return *this;
  }

  std::string str() const { return out_ + "}"; }

  static std::string number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

 private:
  static std::string array(const double* p, Eigen::Index n) {
    std::string v = "[";
    for (Eigen::Index i = 0; i < n; ++i) v += (i ? "," : "") + number(p[i]);
    return v + "]";
  }

  std::string out_;
};

/// {method, loss, outliers, basis, seed, samples_used, candidates}
inline JsonObjectWriter result_json(const SolveResult& r) {
  JsonObjectWriter w;
  w.field("method", to_string(r.method))
      .field("loss", r.loss)
      .indices("outliers", r.outliers)
      .columns("basis", r.subspace.basis())
      .field("seed", r.seed)
      .field("samples_used", r.samples_used)
      .field("candidates", r.candidates);
  return w;
}

/// Planted-truth sidecar written next to a generated dataset.
inline std::string sidecar_json(const Instance& inst) {
  JsonObjectWriter w;
  w.field("n", static_cast<std::uint64_t>(inst.data.rows()))
      .field("d", static_cast<std::uint64_t>(inst.data.cols()))
      .field("r", static_cast<std::uint64_t>(inst.r))
      .field("k", static_cast<std::uint64_t>(inst.k));
  if (inst.planted) {
    const PlantedTruth& p = *inst.planted;
    w.field("noise_sigma", p.noise_sigma)
        .field("gap_gamma", p.gap_gamma)
        .field("seed", p.seed)
        .indices("true_outliers", p.true_outliers)
        .columns("true_subspace", p.true_subspace.basis());
  }
  return w.str();
}

/// Reads a list-of-columns matrix.
inline Eigen::MatrixXd columns_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ParseError("expected a non-empty list of columns", 0);
  const std::size_t rows = j.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    if (!j[c].is_array() || j[c].size() != rows) throw ParseError("ragged basis columns", 0);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!j[c][i].is_number()) throw ParseError("non-numeric basis entry", 0);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = j[c][i].get<double>();
    }
  }
  return m;
}

/// Loads a subspace from a solve result ("basis"), a planted sidecar
/// ("true_subspace"), or a CSV with one basis column per CSV column.
inline Subspace read_basis(const std::string& path) {
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (!is_json) return Subspace::span_of(read_csv(path).values());
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
  for (const char* key : {"basis", "true_subspace"})
    if (doc.contains(key)) return Subspace::span_of(columns_from_json(doc[key]));
  throw ParseError(path + ": no 'basis' or 'true_subspace' field", 0);
}

}  // namespace vorpca
