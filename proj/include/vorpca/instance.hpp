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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "vorpca/error.hpp"
#include "vorpca/grassmann.hpp"
#include "vorpca/linalg.hpp"
#include "vorpca/rng.hpp"

namespace vorpca {

/// Ground truth recorded by the planted-instance generator.
struct PlantedTruth {
  Subspace true_subspace;
  OutlierSet true_outliers;
  double noise_sigma;
  double gap_gamma;
  std::uint64_t seed;
};

/// A problem (X, r, k), optionally with the facts it was planted from.
struct Instance {
  DataMatrix data;
  Index r;
  Index k;
  std::optional<PlantedTruth> planted;
};

struct PlantedParams {
  Index n;
  Index d;
  Index r;
  Index k;
  double noise_sigma;
  double gap_gamma;
};

inline void validate(const PlantedParams& p) {
  if (p.n < 1 || p.k >= p.n) throw InvalidArgument("planted instance needs n > k >= 0");
  detail::check_rank(p.r, p.d);
  if (!(p.gap_gamma > 1.0) || !std::isfinite(p.gap_gamma))
    throw InvalidArgument("gap gamma must be a finite value greater than 1");
  if (!(p.noise_sigma >= 0.0) || !std::isfinite(p.noise_sigma))
    throw InvalidArgument("noise sigma must be finite and nonnegative");
}

/// Draws a planted instance:
///  - a Haar-uniform true subspace L;
///  - n - k inliers B c + sigma * e with c ~ N(0, I_r), e ~ N(0, I_d);
///  - k outliers at random rows, each a standard normal vector rescaled so
///    its distance to L is gamma * base, where base is the largest inlier
///    distance floored at sigma * sqrt(d) (base = 1 when sigma = 0).
/// Outliers are nudged outward until (d2 - d1) / d1 >= gamma - 1 holds in
/// floating point for the farthest inlier d1.
inline Instance generate_planted_instance(const PlantedParams& p, const SeededRng& rng_in) {
  validate(p);
  SeededRng rng = rng_in;
  const auto n = static_cast<Eigen::Index>(p.n);
  const auto d = static_cast<Eigen::Index>(p.d);
  Subspace truth = sample_uniform(p.r, p.d, rng);
  const Eigen::MatrixXd& b = truth.basis();

  // partial Fisher-Yates over row indices
  std::vector<Index> rows(p.n);
  for (Index i = 0; i < p.n; ++i) rows[i] = i;
  for (Index i = 0; i < p.k; ++i) {
    const Index span = p.n - i;
    const auto j = i + std::min<Index>(span - 1, static_cast<Index>(rng.uniform() * static_cast<double>(span)));
    std::swap(rows[i], rows[j]);
  }
  OutlierSet outliers = OutlierSet::from_unsorted({rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(p.k)}, p.n);

  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (outliers.contains(static_cast<Index>(i))) continue;
    Eigen::VectorXd c = gaussian_matrix(p.r, 1, rng);
    Eigen::VectorXd e = gaussian_matrix(p.d, 1, rng);
    x.row(i) = (b * c + p.noise_sigma * e).transpose();
  }
  for (Index i : outliers) x.row(static_cast<Eigen::Index>(i)).setZero();

  Eigen::VectorXd sq = squared_distances(x, truth);
  double max_inlier = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!outliers.contains(static_cast<Index>(i))) max_inlier = std::max(max_inlier, std::sqrt(sq(i)));
  const double base = p.noise_sigma == 0.0
                          ? 1.0
                          : std::max(max_inlier, p.noise_sigma * std::sqrt(static_cast<double>(p.d)));
  const double radius = p.gap_gamma * base;

  for (Index i : outliers) {
    const auto row = static_cast<Eigen::Index>(i);
    for (;;) {
      Eigen::VectorXd g = gaussian_matrix(p.d, 1, rng);
      const double off = (g - b * (b.transpose() * g)).norm();
      if (off <= 1e-8 * std::max(1.0, g.norm())) continue;
      x.row(row) = (g * (radius / off)).transpose();
      break;
    }
  }

  auto gap_ok = [&](double dist) {
    if (dist < radius) return false;
    return max_inlier <= 1e-12 || (dist - max_inlier) / max_inlier >= p.gap_gamma - 1.0;
  };
  for (int pass = 0; pass < 64; ++pass) {
    sq = squared_distances(x, truth);
    bool all_ok = true;
    for (Index i : outliers) {
      const auto row = static_cast<Eigen::Index>(i);
      if (!gap_ok(std::sqrt(sq(row)))) {
        x.row(row) *= 1.0 + 0x1.0p-48;
        all_ok = false;
      }
    }
    if (all_ok) break;
  }

  return Instance{DataMatrix(std::move(x)), p.r, p.k,
                  PlantedTruth{std::move(truth), std::move(outliers), p.noise_sigma, p.gap_gamma,
                               rng_in.seed()}};
}

}  // namespace vorpca
