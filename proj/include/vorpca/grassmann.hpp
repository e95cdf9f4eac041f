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

// Grassmannian toolkit: Haar sampling of Gr(r, d), principal angles, the
// sin(theta_max) distance, volume and ball-measure formulas, and the
// sample-count estimate used to size the randomized solver.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "vorpca/error.hpp"
#include "vorpca/linalg.hpp"
#include "vorpca/parallel.hpp"
#include "vorpca/rng.hpp"

namespace vorpca {

/// Principal angles in [0, pi/2], nondecreasing.
struct PrincipalAngles {
  std::vector<double> angles;
  double largest() const { return angles.empty() ? 0.0 : angles.back(); }
};

inline Eigen::MatrixXd gaussian_matrix(Index rows, Index cols, SeededRng& rng) {
  Eigen::MatrixXd g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < g.cols(); ++c)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, c) = rng.normal();
  return g;
}

/// Haar-uniform point of Gr(r, d): the column span of a d x r standard
/// Gaussian matrix, orthonormalized by QR.
inline Subspace sample_uniform(Index r, Index d, SeededRng& rng) {
  detail::check_rank(r, d);
  for (;;) {
    Eigen::MatrixXd g = gaussian_matrix(d, r, rng);
    try {
      return Subspace::span_of(g);
    } catch (const InvalidArgument&) {
      // rank-deficient draw, probability zero
    }
  }
}

/// Haar-distributed orthogonal d x d matrix.
inline Eigen::MatrixXd random_orthogonal(Index d, SeededRng& rng) {
  Eigen::MatrixXd g = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd rf = qr.matrixQR();
  for (Eigen::Index i = 0; i < q.cols(); ++i)
    if (rf(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

namespace detail {
inline void check_same_shape(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim() || u.rank() != v.rank())
    throw InvalidArgument("subspaces differ in ambient dimension or rank");
}
}  // namespace detail

inline PrincipalAngles principal_angles(const Subspace& u, const Subspace& v) {
  detail::check_same_shape(u, v);
  const Eigen::MatrixXd m = u.basis().transpose() * v.basis();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  PrincipalAngles out;
  out.angles.reserve(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    out.angles.push_back(std::acos(std::clamp(sv(i), 0.0, 1.0)));
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

/// sin of the largest principal angle, in [0, 1].
///
/// Evaluated as the spectral norm of (I - P_U) V, which equals
/// sin(theta_max) but keeps full relative precision for nearby subspaces
/// where acos of a cosine near 1 would not.
inline double grassmann_distance(const Subspace& u, const Subspace& v) {
  detail::check_same_shape(u, v);
  const Eigen::MatrixXd& ub = u.basis();
  const Eigen::MatrixXd resid = v.basis() - ub * (ub.transpose() * v.basis());
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(resid).singularValues();
  return std::clamp(sv.size() ? sv(0) : 0.0, 0.0, 1.0);
}

/// A subspace at Grassmann distance exactly `distance` from `v`, reached
/// along a geodesic whose tangent direction is Gaussian.
inline Subspace sample_at_distance(const Subspace& v, double distance, SeededRng& rng) {
  if (!(distance >= 0.0 && distance <= 1.0))
    throw InvalidArgument("distance must lie in [0, 1]");
  const Eigen::MatrixXd& b = v.basis();
  for (;;) {
    Eigen::MatrixXd g = gaussian_matrix(v.ambient_dim(), v.rank(), rng);
    Eigen::MatrixXd tangent = g - b * (b.transpose() * g);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(tangent, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    if (s(0) <= 1e-12) continue;
    const double top = std::asin(distance);
    Eigen::MatrixXd cols = b * svd.matrixV();
    for (Eigen::Index i = 0; i < cols.cols(); ++i) {
      const double theta = top * s(i) / s(0);
      cols.col(i) = cols.col(i) * std::cos(theta) + svd.matrixU().col(i) * std::sin(theta);
    }
    return Subspace::span_of(cols);
  }
}

/// r (d - r).
inline std::uint64_t grassmannian_dimension(Index r, Index d) {
  detail::check_rank(r, d);
  return static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(d - r);
}

namespace detail {
// log of pi^{m/2} / Gamma(m/2 + 1), the unit m-ball volume
inline double log_unit_ball(double m) {
  return 0.5 * m * std::log(std::numbers::pi) - std::lgamma(0.5 * m + 1.0);
}
}  // namespace detail

/// Volume of Gr(r, d) from the product formula
///
///   prod_{i=1..r} w(d-i) / ( prod_{i=1..r} w(r-i) * prod_{i=1..d-r} w(d-r-i) ),
///   w(m) = pi^{m/2} / Gamma(m/2 + 1).
///
/// The formula is taken as given; note it is not invariant under r <-> d-r
/// (Gr(1,3) gives pi/2, Gr(2,3) gives pi). Evaluated in log space; throws
/// if the result over- or underflows a double.
inline double grassmannian_volume(Index r, Index d) {
  detail::check_rank(r, d);
  double log_vol = 0.0;
  for (Index i = 1; i <= r; ++i) log_vol += detail::log_unit_ball(static_cast<double>(d - i));
  for (Index i = 1; i <= r; ++i) log_vol -= detail::log_unit_ball(static_cast<double>(r - i));
  for (Index i = 1; i <= d - r; ++i)
    log_vol -= detail::log_unit_ball(static_cast<double>(d - r - i));
  const std::string where = "Gr(" + std::to_string(r) + ", " + std::to_string(d) + ")";
  if (log_vol > std::log(std::numeric_limits<double>::max()))
    throw Error("grassmannian_volume overflows double for " + where);
  if (log_vol < std::log(std::numeric_limits<double>::min()))
    throw Error("grassmannian_volume underflows double for " + where);
  return std::exp(log_vol);
}

/// alpha^{m} (2e / m)^{m/2} with m = r(d - r). Lower bound on the Haar
/// measure of a radius-alpha ball; may exceed 1 and is not clamped.
inline double ball_measure_lower_bound(double alpha, Index r, Index d) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  const double m = static_cast<double>(grassmannian_dimension(r, d));
  return std::pow(alpha, m) * std::pow(2.0 * std::numbers::e / m, m / 2.0);
}

/// T = max(1, ceil(eps / delta)) with delta = min(1, ball bound).
inline std::uint64_t required_samples(double alpha, double eps, Index r, Index d) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  const double delta = std::min(1.0, ball_measure_lower_bound(alpha, r, d));
  const double t = std::ceil(eps / delta);
  if (!(t < 0x1.0p63)) throw InvalidArgument("required sample count overflows 64 bits");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(t));
}

struct McEstimate {
  double fraction;
  double std_error;
  std::uint64_t samples;
};

/// Fraction of Haar samples within Grassmann distance alpha of v. Sample i
/// draws from rng.substream(i).
inline McEstimate mc_ball_measure(const Subspace& v, double alpha, std::uint64_t samples,
                                  const SeededRng& rng) {
  if (samples < 1) throw InvalidArgument("samples must be at least 1");
  std::vector<unsigned char> hit(samples, 0);
  parallel_for(samples, [&](std::size_t i) {
    SeededRng local = rng.substream(i);
    const Subspace u = sample_uniform(v.rank(), v.ambient_dim(), local);
    hit[i] = grassmann_distance(u, v) <= alpha;
  });
  double count = 0;
  for (auto h : hit) count += h;
  const double p = count / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples};
}

/// Slack of the two distance bounds for one (x, U, V) triple; negative
/// means violated.
///   corrected: dist(x,U) + |P_U x| g(U,V) - dist(x,V)
///   printed:   dist(x,U) (1 + g(U,V))   - dist(x,V)
struct DistanceBoundSlack {
  double corrected;
  double printed;
};

inline DistanceBoundSlack distance_bound_slack(const Eigen::Ref<const Eigen::VectorXd>& x,
                                               const Subspace& u, const Subspace& v) {
  const double du = dist_point_subspace(x, u);
  const double dv = dist_point_subspace(x, v);
  const double g = grassmann_distance(u, v);
  const double proj = u.project(x).norm();
  return {du + proj * g - dv, du * (1.0 + g) - dv};
}

}  // namespace vorpca
