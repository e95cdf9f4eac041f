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

// Randomized solver: score uniformly sampled subspaces by trimmed loss,
// take the best one's k farthest rows as outliers, and refit PCA on the
// rest. Also the relative-gap estimate and an empirical probe of how far
// from a subspace its farthest-k ordering survives.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "vorpca/csv.hpp"
#include "vorpca/error.hpp"
#include "vorpca/grassmann.hpp"
#include "vorpca/linalg.hpp"
#include "vorpca/result.hpp"
#include "vorpca/rng.hpp"
#include "vorpca/sampled.hpp"

namespace vorpca {

/// Best of T uniform samples by trimmed loss (earliest sample wins ties),
/// followed by a PCA refit without its k farthest rows.
inline SolveResult randomized_solve(const DataMatrix& x, Index r, Index k, std::uint64_t samples,
                                    const SeededRng& rng) {
  detail::check_problem(x, r, k);
  const std::vector<TrimmedLoss> scored = evaluate_uniform_samples(x, r, k, samples, rng);
  std::size_t best = 0;
  for (std::size_t t = 1; t < scored.size(); ++t)
    if (scored[t].loss < scored[best].loss) best = t;
  SolveResult out = detail::finish(x, scored[best].outliers, r, Method::kRandomized);
  out.seed = rng.seed();
  out.samples_used = samples;
  out.candidates = 1;
  return out;
}

/// Distances of the farthest inlier (d1) and nearest outlier (d2) to a
/// subspace when the k farthest rows are outliers; alpha = (d2 - d1) / d1.
struct GapReport {
  double d1;
  double d2;
  double alpha;
};

inline constexpr double kDegenerateGapTol = 1e-12;

/// Throws DegenerateGap when d1 <= 1e-12 and InvalidArgument when k = 0.
inline GapReport alpha_gap(const DataMatrix& x, const Subspace& l, Index k) {
  if (k < 1 || k >= x.rows())
    throw InvalidArgument("alpha_gap requires 1 <= k < n (got k=" + std::to_string(k) + ")");
  Eigen::VectorXd dist = squared_distances(x.values(), l).cwiseSqrt();
  std::vector<double> sorted(dist.data(), dist.data() + dist.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double d2 = sorted[k - 1];
  const double d1 = sorted[k];
  if (d1 <= kDegenerateGapTol)
    throw DegenerateGap("farthest inlier lies on the subspace (d1 = " + format_double(d1) +
                            "); the relative gap is undefined",
                        d1, d2);
  return {d1, d2, (d2 - d1) / d1};
}

struct PreservationReport {
  double radius;   ///< distance of the nearest probe that changed the set (1 if none)
  double alpha;    ///< alpha_gap at the centre, for comparison
  std::uint64_t probes_used;
};

inline constexpr double kDefaultShellWidth = 0.02;
inline constexpr std::uint64_t kDefaultProbes = 500;

/// Walks distance shells [j w, (j + 1) w) outward from `l`. Each shell gets
/// probes / ceil(1 / w) probe subspaces (at least one), placed at a uniform
/// distance inside the shell along a random geodesic. Stops at the first
/// shell containing a probe whose k-farthest set differs from that of `l`
/// and returns the smallest such probe distance, so every probe strictly
/// closer than the returned radius preserved the set; returns 1 if no
/// shell fails.
inline PreservationReport ordering_preservation_radius(const DataMatrix& x, const Subspace& l,
                                                       Index k, std::uint64_t probes,
                                                       const SeededRng& rng,
                                                       double shell_width = kDefaultShellWidth) {
  if (probes < 1) throw InvalidArgument("probes must be at least 1");
  if (!(shell_width > 0.0 && shell_width <= 1.0))
    throw InvalidArgument("shell width must lie in (0, 1]");
  const GapReport gap = alpha_gap(x, l, k);
  const OutlierSet reference = trimmed_loss(x, l, k).outliers;

  const auto shells = static_cast<std::uint64_t>(std::ceil(1.0 / shell_width - 1e-9));
  const std::uint64_t per_shell = std::max<std::uint64_t>(1, probes / shells);
  std::uint64_t used = 0;
  for (std::uint64_t j = 0; j < shells; ++j) {
    const double inner = shell_width * static_cast<double>(j);
    double nearest_failure = 2.0;
    for (std::uint64_t p = 0; p < per_shell; ++p) {
      SeededRng local = rng.substream(j * per_shell + p);
      const double dist = std::min(1.0, inner + shell_width * local.uniform());
      const Subspace probe = sample_at_distance(l, dist, local);
      ++used;
      if (trimmed_loss(x, probe, k).outliers != reference)
        nearest_failure = std::min(nearest_failure, dist);
    }
    if (nearest_failure <= 1.0) return {nearest_failure, gap.alpha, used};
  }
  return {1.0, gap.alpha, used};
}

}  // namespace vorpca
