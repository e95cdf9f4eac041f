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

// Exact solvers. brute_force_solve enumerates every outlier subset and is
// the ground truth. In the plane (d = 2, r = 1) the degree-(n-k) Voronoi
// structure over lines through the origin is an arrangement of arcs on
// the circle of line angles; its cells are exactly the feasible outlier
// sets, so solving PCA once per cell is exact. In higher dimension cells
// are discovered by sampling the Grassmannian.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "vorpca/error.hpp"
#include "vorpca/linalg.hpp"
#include "vorpca/parallel.hpp"
#include "vorpca/result.hpp"
#include "vorpca/rng.hpp"
#include "vorpca/sampled.hpp"

namespace vorpca {

inline constexpr double kDefaultEnumerationBudget = 2e6;
inline constexpr double kBreakpointTol = 1e-12;

/// C(n, k) as a double; exact while it fits in 53 bits.
inline double binomial(Index n, Index k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (Index i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

namespace detail {

/// Advances `idx` to the next k-combination of [0, n) in lexicographic
/// order. Returns false after the last one.
inline bool next_combination(std::vector<Index>& idx, Index n) {
  const Index k = idx.size();
  Index i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (Index j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Minimum-PCA-loss candidate; ties keep the earlier (lexicographically
/// smaller) set. Candidates must be sorted.
inline const OutlierSet& best_candidate(const DataMatrix& x, const std::vector<OutlierSet>& sets,
                                        Index r) {
  std::vector<double> loss(sets.size());
  parallel_for(sets.size(), [&](std::size_t i) { loss[i] = pca_fit_excluding(x, sets[i], r).loss; });
  std::size_t best = 0;
  for (std::size_t i = 1; i < sets.size(); ++i)
    if (loss[i] < loss[best]) best = i;
  return sets[best];
}

inline void check_planar(const DataMatrix& x) {
  if (x.cols() != 2)
    throw InvalidArgument("planar Voronoi solver requires d = 2 (got d=" + std::to_string(x.cols()) +
                          ")");
}

}  // namespace detail

/// Exact solve by enumerating all C(n, k) outlier subsets in lexicographic
/// order. Throws BudgetExceeded when C(n, k) > budget.
inline SolveResult brute_force_solve(const DataMatrix& x, Index r, Index k,
                                     double budget = kDefaultEnumerationBudget) {
  detail::check_problem(x, r, k);
  const Index n = x.rows();
  const double subsets = binomial(n, k);
  if (subsets > budget)
    throw BudgetExceeded("C(" + std::to_string(n) + ", " + std::to_string(k) +
                             ") subsets exceed the enumeration budget; use a sampled method",
                         subsets, budget);

  constexpr std::size_t kBlock = 4096;
  std::vector<Index> idx(k);
  for (Index i = 0; i < k; ++i) idx[i] = i;
  OutlierSet best_set(idx);
  double best_loss = std::numeric_limits<double>::infinity();
  std::vector<OutlierSet> block;
  std::vector<double> loss;
  bool more = true;
  while (more) {
    block.clear();
    while (more && block.size() < kBlock) {
      block.emplace_back(idx);
      more = k > 0 && detail::next_combination(idx, n);
    }
    loss.assign(block.size(), 0.0);
    parallel_for(block.size(),
                 [&](std::size_t i) { loss[i] = pca_fit_excluding(x, block[i], r).loss; });
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (loss[i] < best_loss) {
        best_loss = loss[i];
        best_set = block[i];
      }
    }
  }
  SolveResult out = detail::finish(x, std::move(best_set), r, Method::kBrute);
  out.candidates = static_cast<std::uint64_t>(subsets);
  return out;
}

/// Line through the origin at angle theta.
inline Subspace line_at(double theta) {
  Eigen::MatrixXd b(2, 1);
  b << std::cos(theta), std::sin(theta);
  canonicalize_signs(b);
  return Subspace(std::move(b));
}

/// Angle in [0, pi) of a line in the plane.
inline double line_angle(const Subspace& line) {
  if (line.ambient_dim() != 2 || line.rank() != 1)
    throw InvalidArgument("line_angle expects a point of Gr(1, 2)");
  double t = std::atan2(line.basis()(1, 0), line.basis()(0, 0));
  if (t < 0) t += std::numbers::pi;
  if (t >= std::numbers::pi) t -= std::numbers::pi;
  return t;
}

/// Angles in [0, pi) at which two data points are equidistant from the
/// line L_theta, over all pairs, sorted and deduplicated.
///
/// dist^2(x, L_theta) = (|x|^2 - a cos 2theta - b sin 2theta) / 2 with
/// a = x1^2 - x2^2 and b = 2 x1 x2, so a pair (i, j) ties where
/// A cos 2theta + B sin 2theta = C for the differences A, B, C.
inline std::vector<double> arc_breakpoints_2d(const DataMatrix& x) {
  detail::check_planar(x);
  constexpr double pi = std::numbers::pi;
  const Eigen::MatrixXd& v = x.values();
  const Eigen::Index n = v.rows();
  std::vector<double> roots;
  auto push = [&](double phi) {
    double t = std::fmod(phi / 2.0, pi);
    if (t < 0) t += pi;
    if (t >= pi) t = 0.0;
    roots.push_back(t);
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi1 = v(i, 0), xi2 = v(i, 1);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double xj1 = v(j, 0), xj2 = v(j, 1);
      const double a = (xi1 * xi1 - xi2 * xi2) - (xj1 * xj1 - xj2 * xj2);
      const double b = 2.0 * xi1 * xi2 - 2.0 * xj1 * xj2;
      const double c = (xi1 * xi1 + xi2 * xi2) - (xj1 * xj1 + xj2 * xj2);
      const double radius = std::hypot(a, b);
      const double scale = xi1 * xi1 + xi2 * xi2 + xj1 * xj1 + xj2 * xj2;
      if (radius <= 1e-14 * scale) continue;  // equidistant from every line, or from none
      if (std::abs(c) > radius) continue;
      const double base = std::atan2(b, a);
      const double spread = std::acos(std::clamp(c / radius, -1.0, 1.0));
      push(base + spread);
      if (spread > 0.0) push(base - spread);
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double t : roots)
    if (out.empty() || t - out.back() > kBreakpointTol) out.push_back(t);
  if (out.size() > 1 && out.front() + pi - out.back() <= kBreakpointTol) out.pop_back();
  return out;
}

/// Maximal arc of line angles sharing one k-farthest set. theta_lo is in
/// [0, pi); theta_hi is unwrapped, so theta_lo < theta_hi <= theta_lo + pi.
struct ArcCell {
  double theta_lo;
  double theta_hi;
  OutlierSet farthest_k;
  double representative;

  double length() const { return theta_hi - theta_lo; }
  /// True if angle t (any real) falls in the half-open arc.
  bool contains(double t) const {
    constexpr double pi = std::numbers::pi;
    double u = std::fmod(t - theta_lo, pi);
    if (u < 0) u += pi;
    return u < length();
  }
};

/// Degree-(n-k) arc diagram on Gr(1, 2): split the angle circle at every
/// breakpoint, label each arc by the k points farthest from the line at
/// its midpoint, and merge neighbours (cyclically) with equal labels.
inline std::vector<ArcCell> build_arc_diagram_2d(const DataMatrix& x, Index k) {
  detail::check_planar(x);
  if (k >= x.rows()) throw InvalidArgument("k must be smaller than the number of rows");
  constexpr double pi = std::numbers::pi;
  const std::vector<double> breaks = arc_breakpoints_2d(x);

  auto label = [&](double t) { return trimmed_loss(x, line_at(t), k).outliers; };
  if (breaks.empty()) return {ArcCell{0.0, pi, label(pi / 2), pi / 2}};

  std::vector<ArcCell> arcs;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = i + 1 < breaks.size() ? breaks[i + 1] : breaks.front() + pi;
    if (hi - lo < kBreakpointTol) continue;
    const double mid = 0.5 * (lo + hi);
    arcs.push_back(ArcCell{lo, hi, label(mid), 0.0});
  }

  std::vector<ArcCell> cells;
  for (auto& a : arcs) {
    if (!cells.empty() && cells.back().farthest_k == a.farthest_k)
      cells.back().theta_hi = a.theta_hi;
    else
      cells.push_back(std::move(a));
  }
  if (cells.size() > 1 && cells.front().farthest_k == cells.back().farthest_k) {
    cells.front().theta_lo = cells.back().theta_lo - pi;
    cells.pop_back();
  }
  for (auto& c : cells) {
    if (c.theta_lo < 0) {
      c.theta_lo += pi;
      c.theta_hi += pi;
    }
    double mid = 0.5 * (c.theta_lo + c.theta_hi);
    if (mid >= pi) mid -= pi;
    c.representative = mid;
  }
  return cells;
}

/// Distinct farthest-k sets of the diagram, lexicographically sorted.
inline std::vector<OutlierSet> candidate_sets(const std::vector<ArcCell>& cells) {
  std::set<OutlierSet> unique;
  for (const auto& c : cells) unique.insert(c.farthest_k);
  return {unique.begin(), unique.end()};
}

/// Exact planar solve (d = 2, r = 1): PCA once per distinct cell label.
inline SolveResult voronoi_solve_2d(const DataMatrix& x, Index k) {
  detail::check_planar(x);
  detail::check_problem(x, 1, k);
  const std::vector<OutlierSet> sets = candidate_sets(build_arc_diagram_2d(x, k));
  SolveResult out = detail::finish(x, detail::best_candidate(x, sets, 1), 1, Method::kVoronoi2d);
  out.candidates = sets.size();
  return out;
}

/// Outlier sets witnessed by T uniform samples, deduplicated and sorted.
/// Sample t comes from rng.substream(t), so a longer run extends a
/// shorter one.
inline std::vector<OutlierSet> enumerate_candidate_sets_sampled(const DataMatrix& x, Index r,
                                                                Index k, std::uint64_t samples,
                                                                const SeededRng& rng) {
  detail::check_problem(x, r, k);
  std::set<OutlierSet> unique;
  for (auto& s : evaluate_uniform_samples(x, r, k, samples, rng)) unique.insert(std::move(s.outliers));
  return {unique.begin(), unique.end()};
}

/// Sampled-cell solve: PCA once per witnessed outlier set.
inline SolveResult voronoi_solve_sampled(const DataMatrix& x, Index r, Index k,
                                         std::uint64_t samples, const SeededRng& rng) {
  const std::vector<OutlierSet> sets = enumerate_candidate_sets_sampled(x, r, k, samples, rng);
  SolveResult out = detail::finish(x, detail::best_candidate(x, sets, r), r, Method::kVoronoiSampled);
  out.seed = rng.seed();
  out.samples_used = samples;
  out.candidates = sets.size();
  return out;
}

}  // namespace vorpca
