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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "vorpca/grassmann.hpp"
#include "vorpca/voronoi.hpp"

namespace vorpca {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(SeededRng, SameSeedAndStreamReproduce) {
  SeededRng a(42, 3), b(42, 3), c(42, 4);
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    EXPECT_NE(x, c.normal());
  }
  EXPECT_NE(SeededRng(1).substream(0).next_u64(), SeededRng(1).substream(1).next_u64());
}

TEST(SeededRng, NormalMoments) {
  SeededRng rng(5);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal();
    sum += v;
    sq += v * v;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(SampleUniform, OrthonormalAndDeterministic) {
  SeededRng a(9), b(9);
  for (int i = 0; i < 50; ++i) {
    const Subspace u = sample_uniform(3, 7, a);
    const Subspace v = sample_uniform(3, 7, b);
    EXPECT_LE((u.basis().transpose() * u.basis() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(),
              1e-10);
    EXPECT_EQ(u.basis(), v.basis());
  }
  SeededRng rng(1);
  EXPECT_THROW(sample_uniform(0, 3, rng), InvalidArgument);
  EXPECT_THROW(sample_uniform(3, 3, rng), InvalidArgument);
}

TEST(SampleUniform, LineAnglesUniformOnGr12) {
  SeededRng rng(2024);
  std::vector<double> angles;
  for (int i = 0; i < 10000; ++i) angles.push_back(line_angle(sample_uniform(1, 2, rng)));
  const double ks = testing::ks_statistic(angles, [](double t) { return t / kPi; });
  EXPECT_LT(ks, 0.02);
}

TEST(SampleUniform, RotationInvariantOnGr24) {
  SeededRng rng(77);
  const Subspace w = sample_uniform(2, 4, rng);
  const Eigen::MatrixXd q = random_orthogonal(4, rng);
  std::vector<double> plain, rotated;
  for (int i = 0; i < 10000; ++i) {
    plain.push_back(grassmann_distance(sample_uniform(2, 4, rng), w));
    const Subspace s = sample_uniform(2, 4, rng);
    rotated.push_back(grassmann_distance(Subspace(q * s.basis()), w));
  }
  EXPECT_LT(testing::ks_two_sample(plain, rotated), 0.03);
}

TEST(PrincipalAngles, Examples) {
  const Subspace e1(Eigen::Vector2d(1, 0)), e2(Eigen::Vector2d(0, 1));
  const Subspace diag(Eigen::Vector2d(1, 1).normalized());
  EXPECT_EQ(principal_angles(e1, e1).angles, std::vector<double>{0.0});
  EXPECT_NEAR(principal_angles(e1, e2).largest(), kPi / 2, 1e-12);
  EXPECT_NEAR(principal_angles(e1, diag).largest(), kPi / 4, 1e-12);

  SeededRng rng(3);
  const Subspace u = sample_uniform(3, 6, rng);
  const PrincipalAngles self = principal_angles(u, u);
  for (double a : self.angles) EXPECT_NEAR(a, 0.0, 1e-7);
  const PrincipalAngles pa = principal_angles(u, sample_uniform(3, 6, rng));
  EXPECT_TRUE(std::is_sorted(pa.angles.begin(), pa.angles.end()));
  EXPECT_THROW(principal_angles(u, sample_uniform(2, 6, rng)), InvalidArgument);
  EXPECT_THROW(principal_angles(u, sample_uniform(3, 5, rng)), InvalidArgument);
}

TEST(GrassmannDistance, Examples) {
  const Subspace e1(Eigen::Vector2d(1, 0)), e2(Eigen::Vector2d(0, 1));
  const Subspace diag(Eigen::Vector2d(1, 1).normalized());
  EXPECT_EQ(grassmann_distance(e1, e1), 0.0);
  EXPECT_NEAR(grassmann_distance(e1, e2), 1.0, 1e-15);
  EXPECT_NEAR(grassmann_distance(e1, diag), std::sqrt(2.0) / 2, 1e-15);
}

TEST(GrassmannDistance, AgreesWithLargestPrincipalAngle) {
  SeededRng rng(8);
  for (int i = 0; i < 500; ++i) {
    const Subspace u = sample_uniform(2, 5, rng), v = sample_uniform(2, 5, rng);
    EXPECT_NEAR(grassmann_distance(u, v), std::sin(principal_angles(u, v).largest()), 1e-10);
  }
}

TEST(GrassmannDistance, SymmetricBoundedZeroOnSelf) {
  SeededRng rng(10);
  for (int i = 0; i < 10000; ++i) {
    const Index d = 2 + rng.next_u64() % 7;
    const Index r = 1 + rng.next_u64() % (d - 1);
    const Subspace u = sample_uniform(r, d, rng), v = sample_uniform(r, d, rng);
    const double g = grassmann_distance(u, v);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0);
    EXPECT_NEAR(g, grassmann_distance(v, u), 1e-12);
    EXPECT_LE(grassmann_distance(u, u), 1e-14);
  }
}

TEST(SampleAtDistance, HitsRequestedDistance) {
  SeededRng rng(12);
  for (double dist : {0.0, 0.013, 0.25, 0.7, 1.0}) {
    const Subspace v = sample_uniform(2, 5, rng);
    EXPECT_NEAR(grassmann_distance(sample_at_distance(v, dist, rng), v), dist, 1e-12);
  }
  // rank larger than codimension
  const Subspace v = sample_uniform(3, 4, rng);
  EXPECT_NEAR(grassmann_distance(sample_at_distance(v, 0.4, rng), v), 0.4, 1e-12);
}

TEST(GrassmannianDimension, Examples) {
  EXPECT_EQ(grassmannian_dimension(1, 2), 1u);
  EXPECT_EQ(grassmannian_dimension(1, 3), 2u);
  EXPECT_EQ(grassmannian_dimension(2, 5), 6u);
  EXPECT_THROW(grassmannian_dimension(2, 2), InvalidArgument);
}

TEST(GrassmannianVolume, HandEvaluatedValues) {
  EXPECT_NEAR(grassmannian_volume(1, 2), 2.0, 2.0 * 1e-12);
  EXPECT_NEAR(grassmannian_volume(1, 3), kPi / 2, kPi / 2 * 1e-12);
  EXPECT_NEAR(grassmannian_volume(2, 3), kPi, kPi * 1e-12);
}

TEST(GrassmannianVolume, ReportsOverflowAndUnderflow) {
  EXPECT_THROW(grassmannian_volume(10, 100), Error);
  EXPECT_THROW(grassmannian_volume(50, 100), Error);
  EXPECT_THROW(grassmannian_volume(0, 4), InvalidArgument);
}

TEST(BallMeasureLowerBound, HandEvaluatedValues) {
  const double e = std::numbers::e;
  EXPECT_NEAR(ball_measure_lower_bound(0.1, 1, 2), 0.1 * std::sqrt(2 * e), 1e-12 * 0.23316);
  EXPECT_NEAR(ball_measure_lower_bound(0.1, 1, 3), e * 0.01, 1e-12 * 0.027183);
  EXPECT_NEAR(ball_measure_lower_bound(0.1, 1, 2), 0.23316, 1e-5);
  EXPECT_LT(ball_measure_lower_bound(1e-200, 2, 4), 1e-300);
  EXPECT_GT(ball_measure_lower_bound(1.0, 1, 2), 1.0);  // not clamped
  EXPECT_THROW(ball_measure_lower_bound(0.0, 1, 2), InvalidArgument);
  EXPECT_THROW(ball_measure_lower_bound(-1.0, 1, 2), InvalidArgument);
}

TEST(RequiredSamples, HandEvaluatedValues) {
  EXPECT_EQ(required_samples(0.1, 0.9, 1, 2), 4u);
  EXPECT_EQ(required_samples(0.1, 0.9, 1, 3), 34u);
  EXPECT_EQ(required_samples(1.0, 0.9, 1, 2), 1u);
  EXPECT_THROW(required_samples(0.0, 0.9, 1, 2), InvalidArgument);
  EXPECT_THROW(required_samples(0.1, 1.0, 1, 2), InvalidArgument);
  EXPECT_THROW(required_samples(0.1, 0.0, 1, 2), InvalidArgument);
}

TEST(McBallMeasure, Examples) {
  SeededRng rng(4);
  const Subspace v = sample_uniform(2, 4, rng);
  EXPECT_EQ(mc_ball_measure(v, 1.0, 2000, rng).fraction, 1.0);
  EXPECT_EQ(mc_ball_measure(v, 0.0, 2000, rng).fraction, 0.0);
  EXPECT_THROW(mc_ball_measure(v, 0.5, 0, rng), InvalidArgument);

  const Subspace line(Eigen::Vector2d(1, 0));
  const McEstimate mc = mc_ball_measure(line, 0.1, 100000, SeededRng(31));
  EXPECT_NEAR(mc.fraction, 2 * std::asin(0.1) / kPi, 0.003);
  EXPECT_GT(mc.std_error, 0.0);
  EXPECT_LT(mc.std_error, 0.002);
}

TEST(McBallMeasure, IndependentOfThreadCount) {
  const Subspace line(Eigen::Vector2d(1, 0));
  set_thread_limit(1);
  const double serial = mc_ball_measure(line, 0.3, 5000, SeededRng(6)).fraction;
  set_thread_limit(4);
  const double threaded = mc_ball_measure(line, 0.3, 5000, SeededRng(6)).fraction;
  set_thread_limit(0);
  EXPECT_EQ(serial, threaded);
}

TEST(DistanceBound, CorrectedFormHoldsPrintedFormDoesNot) {
  SeededRng rng(13);
  int printed_violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const Index d = 2 + rng.next_u64() % 7;
    const Index r = 1 + rng.next_u64() % std::min<Index>(4, d - 1);
    const Subspace u = sample_uniform(r, d, rng), v = sample_uniform(r, d, rng);
    const Eigen::VectorXd g = gaussian_matrix(d, 1, rng) * (1 + 5 * rng.uniform());
    const double tilt = rng.uniform();
    const Eigen::VectorXd x = u.project(g) + tilt * tilt * (g - u.project(g));
    const DistanceBoundSlack s = distance_bound_slack(x, u, v);
    EXPECT_GE(s.corrected, -1e-9);
    printed_violations += s.printed < -1e-9;
  }
  EXPECT_GT(printed_violations, 0);
}

}  // namespace
}  // namespace vorpca
