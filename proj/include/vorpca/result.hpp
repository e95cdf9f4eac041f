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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vorpca/error.hpp"
#include "vorpca/linalg.hpp"

namespace vorpca {

enum class Method { kBrute, kVoronoi2d, kVoronoiSampled, kRandomized };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::kBrute: return "brute";
    case Method::kVoronoi2d: return "voronoi2d";
    case Method::kVoronoiSampled: return "voronoi-sampled";
    case Method::kRandomized: return "randomized";
  }
  return "unknown";
}

inline Method parse_method(std::string_view name) {
  if (name == "brute") return Method::kBrute;
  if (name == "voronoi2d") return Method::kVoronoi2d;
  if (name == "voronoi-sampled") return Method::kVoronoiSampled;
  if (name == "randomized") return Method::kRandomized;
  throw InvalidArgument("unknown method '" + std::string(name) +
                        "' (expected brute, voronoi2d, voronoi-sampled or randomized)");
}

/// Outcome of one solve of the outlier-robust PCA problem.
struct SolveResult {
  Subspace subspace;
  OutlierSet outliers;
  double loss;
  Method method;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples_used;
  /// Number of candidate outlier sets that were refit with PCA.
  std::uint64_t candidates = 0;
};

namespace detail {

/// Refits PCA without `outliers` and packages the result with the
/// objective recomputed row by row.
inline SolveResult finish(const DataMatrix& x, OutlierSet outliers, Index r, Method method) {
  PcaSolution fit = pca_fit_excluding(x, outliers, r);
  const double loss = outlier_objective(x, outliers, fit.subspace);
  return SolveResult{std::move(fit.subspace), std::move(outliers), loss, method, {}, {}, 0};
}

inline void check_problem(const DataMatrix& x, Index r, Index k) {
  check_rank(r, x.cols());
  if (k >= x.rows())
    throw InvalidArgument("k must be smaller than the number of rows (k=" + std::to_string(k) +
                          ", n=" + std::to_string(x.rows()) + ")");
}

}  // namespace detail
}  // namespace vorpca
