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

// Test-only oracles. These deliberately avoid the library's solver paths:
// subset enumeration by bitmask, PCA loss from the eigenvalues of the Gram
// matrix instead of an SVD, and farthest-set labels from a dense angle scan.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <vector>

namespace vorpca::testing {

/// Sum of the d - r smallest eigenvalues of the Gram matrix of `rows`.
inline double gram_pca_loss(const Eigen::MatrixXd& rows, int r) {
  const Eigen::MatrixXd gram = rows.transpose() * rows;
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues();
  double loss = 0.0;
  for (int i = 0; i < ev.size() - r; ++i) loss += std::max(0.0, ev(i));  // ascending order
  return loss;
}

struct SubsetOracle {
  double best = std::numeric_limits<double>::infinity();
  double runner_up = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_set;
  std::size_t subsets = 0;
};

/// Every k-subset of the n rows via bitmasks (n <= 20).
inline SubsetOracle enumerate_subsets(const Eigen::MatrixXd& x, int r, int k) {
  const int n = static_cast<int>(x.rows());
  SubsetOracle o;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    ++o.subsets;
    Eigen::MatrixXd keep(n - k, x.cols());
    std::vector<std::size_t> set;
    int row = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i))
        set.push_back(static_cast<std::size_t>(i));
      else
        keep.row(row++) = x.row(i);
    }
    const double loss = gram_pca_loss(keep, r);
    if (loss < o.best) {
      o.runner_up = o.best;
      o.best = loss;
      o.best_set = set;
    } else if (loss < o.runner_up) {
      o.runner_up = loss;
    }
  }
  return o;
}

/// Sets S for which some scanned angle puts every member of S strictly
/// farther from the line than every non-member.
inline std::set<std::vector<std::size_t>> scan_strict_sets(const Eigen::MatrixXd& x, int k,
                                                           int steps) {
  std::set<std::vector<std::size_t>> out;
  const int n = static_cast<int>(x.rows());
  for (int s = 0; s < steps; ++s) {
    const double t = std::numbers::pi * (s + 0.5) / steps;
    const double c = std::cos(t), sn = std::sin(t);
    std::vector<std::pair<double, int>> dist(n);
    for (int i = 0; i < n; ++i) dist[i] = {std::abs(-sn * x(i, 0) + c * x(i, 1)), i};
    std::sort(dist.begin(), dist.end(), [](auto a, auto b) { return a.first > b.first; });
    if (k > 0 && k < n && !(dist[k - 1].first > dist[k].first)) continue;
    std::vector<std::size_t> set;
    for (int i = 0; i < k; ++i) set.push_back(static_cast<std::size_t>(dist[i].second));
    std::sort(set.begin(), set.end());
    out.insert(set);
  }
  return out;
}

/// One-sample Kolmogorov-Smirnov statistic against the CDF `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (static_cast<double>(i) + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

/// Wilson score interval for k successes out of n at 95%.
inline std::pair<double, double> wilson95(std::size_t k, std::size_t n) {
  const double z = 1.959963984540054;
  const double p = static_cast<double>(k) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {centre - half, centre + half};
}

}  // namespace vorpca::testing
