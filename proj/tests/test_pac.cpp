// Copyright 2026 The infdim Authors
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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "infdim/analysis.hpp"
#include "infdim/distributions.hpp"
#include "infdim/errors.hpp"
#include "infdim/pac.hpp"

namespace infdim {
namespace {

double angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::acos(std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0));
}

BalcanLongResult run_bl(const Eigen::VectorXd& v, double eps_prime, const BalcanLongParams& params, Rng& rng) {
  const auto spec = DistributionSpec::gaussian(static_cast<std::size_t>(v.size()));
  const DifferenceSampler sampler = [&](Rng& r) {
    const Point z = sample(spec, r);
    return DifferenceDraw{z, z, Point(Eigen::VectorXd::Zero(v.size()))};
  };
  const DifferenceLabeler labeler = [&](const DifferenceDraw& d) { return oracle_sign(v.dot(d.z.coords())); };
  return balcan_long(sampler, labeler, eps_prime, 0.1, params, rng);
}

TEST(BalcanLong, LocalizesNormal) {
  const Eigen::Vector3d v(1, 0, 0);
  int close = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng({1, t});
    close += angle(run_bl(v, 0.05, {}, rng).normal, v) <= 0.1;
  }
  EXPECT_GE(close, 45);
}

TEST(BalcanLong, SingleUnrestrictedRoundIsPassiveErm) {
  const Eigen::Vector3d v(0.3, -0.5, 0.8);
  BalcanLongParams p;
  p.rounds = 1;
  p.initial_samples = 500;
  p.band_constant = 1e9;
  double total = 0.0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng({2, t});
    const auto r = run_bl(v, 0.05, p, rng);
    EXPECT_EQ(r.labels_used, 500u);
    total += angle(r.normal, v);
  }
  EXPECT_LE(total / 20, 0.3);
}

TEST(BalcanLong, LabelsGrowLogarithmically) {
  const Eigen::Vector3d v(0, 1, 0);
  double coarse = 0.0;
  double fine = 0.0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng a({3, t});
    Rng b({3, t});
    coarse += static_cast<double>(run_bl(v, 0.05, {}, a).labels_used);
    fine += static_cast<double>(run_bl(v, 0.0125, {}, b).labels_used);
  }
  EXPECT_LE(fine / coarse, 2.5);
}

TEST(Project, Examples) {
  const std::vector<Point> pts{{3, 9}, {-1, 4}};
  EXPECT_EQ(project(pts, Eigen::Vector2d(1, 0)), (std::vector<double>{3, -1}));
  const Point x{3, 4};
  EXPECT_NEAR(project(std::vector<Point>{x}, x.coords().normalized())[0], 5.0, 1e-12);
}

TEST(Project, GaussianMarginal) {
  Rng rng({4, 0});
  const auto pts = sample_n(DistributionSpec::gaussian(3), 100'000, rng);
  const auto p = project(pts, Eigen::Vector3d(1, 1, 1).normalized());
  double mean = 0.0;
  for (double x : p) mean += x;
  mean /= static_cast<double>(p.size());
  double var = 0.0;
  for (double x : p) var += (x - mean) * (x - mean);
  var /= static_cast<double>(p.size() - 1);
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(Threshold, AllPositivePadsBeyondExtreme) {
  Rng rng({5, 0});
  const auto pts = sample_n(DistributionSpec::uniform_ball(1), 100, rng);
  Oracle o(Hyperplane(Eigen::VectorXd::Ones(1), 5.0));
  const auto r = threshold(pts, Eigen::VectorXd::Ones(1), o);
  double lo = 1.0;
  for (const auto& p : pts) lo = std::min(lo, p[0]);
  EXPECT_TRUE(r.one_sided);
  EXPECT_NEAR(r.threshold, lo - 1e-6, 1e-12);
  EXPECT_DOUBLE_EQ(r.shift, -r.threshold);
}

TEST(Threshold, RecoversOneDimensionalCut) {
  int close = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng({6, t});
    const auto pts = sample_n(DistributionSpec::uniform_ball(1), 1000, rng);
    Oracle o(Hyperplane(Eigen::VectorXd::Ones(1), -0.3));
    const auto r = threshold(pts, Eigen::VectorXd::Ones(1), o);
    EXPECT_LE(r.labels_used, 11u);
    EXPECT_EQ(r.labels_used, o.ledger().label_count);
    close += std::abs(r.threshold - 0.3) <= 0.01;
  }
  EXPECT_GE(close, 90);
}

TEST(Threshold, LabelBudgetIsBinarySearch) {
  for (std::size_t n : {1u, 2u, 3u, 17u, 64u, 1000u}) {
    Rng rng({7, n});
    const auto pts = sample_n(DistributionSpec::gaussian(2), n, rng);
    Oracle o(sample_uniform_offset_hyperplane(2, 1.0, rng));
    const auto r = threshold(pts, Eigen::Vector2d(1, 0), o);
    EXPECT_LE(r.labels_used, static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1);
  }
}

PacOutcome pac_run(double eps, std::uint64_t t, const Hyperplane* fixed = nullptr) {
  Rng rng({8, t});
  const auto spec = DistributionSpec::gaussian(3);
  const Hyperplane h = fixed ? *fixed : sample_uniform_offset_hyperplane(3, 1.0, rng);
  Oracle o(h);
  PacParams p;
  p.epsilon = eps;
  PacOutcome out = comparison_pool_pac(spec, p, o, rng);
  out.measured_error = estimate_disagreement(out.hypothesis, h, spec, 100'000, rng);
  EXPECT_EQ(out.ledger, o.ledger());
  return out;
}

TEST(ComparisonPoolPac, MeetsAccuracyTarget) {
  int ok = 0;
  for (std::uint64_t t = 0; t < 30; ++t) ok += pac_run(0.05, t).measured_error <= 0.05;
  EXPECT_GE(ok, 27);
}

TEST(ComparisonPoolPac, HomogeneousSpecialCase) {
  const Hyperplane h(Eigen::Vector3d(0.2, -0.4, 0.9), 0.0);
  for (std::uint64_t t = 0; t < 10; ++t) EXPECT_LE(pac_run(0.05, t, &h).measured_error, 0.05);
}

TEST(ComparisonPoolPac, QueriesScaleLogarithmically) {
  double coarse = 0.0;
  double fine = 0.0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    coarse += static_cast<double>(pac_run(0.05, t).ledger.total());
    fine += static_cast<double>(pac_run(0.0125, t).ledger.total());
  }
  EXPECT_LE(fine / coarse, 2.5);
}

TEST(ComparisonPoolPac, NonIsotropicSpecWithEmpiricalWhitening) {
  Eigen::Matrix3d a;
  a << 2, 0.3, 0, 0, 0.5, 0, 0, 0.2, 1.5;
  const auto spec =
      DistributionSpec::affine_image(DistributionSpec::gaussian(3), AffineMap(a, Eigen::Vector3d(1, -2, 0.5)));
  int ok = 0;
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng({9, t});
    const Hyperplane h(sample_unit_vector(3, rng), rng.uniform(-1.0, 1.0));
    const Hyperplane hs = transform_hyperplane(AffineMap(a, Eigen::Vector3d(1, -2, 0.5)), h);
    Oracle o(hs);
    PacParams p;
    p.use_exact_isotropizer = false;
    const PacOutcome out = comparison_pool_pac(spec, p, o, rng);
    ok += estimate_disagreement(out.hypothesis, hs, spec, 100'000, rng) <= 0.05;
  }
  EXPECT_GE(ok, 8);
}

TEST(PacParams, Validation) {
  PacParams p;
  p.epsilon = 1.5;
  EXPECT_THROW(p.validate(), ContractViolation);
  p = {};
  p.delta = 0.0;
  EXPECT_THROW(p.validate(), ContractViolation);
}

TEST(Mqs2d, LineOutsideDiskUsesOnlyVertices) {
  Oracle o(Hyperplane(Eigen::Vector2d(1, 0), 3.0));
  const PacOutcome out = label_mqs_pac_2d(0.04, o);
  EXPECT_EQ(out.ledger.total(), mqs2d_vertex_count(0.04));
  Rng rng({10, 0});
  EXPECT_EQ(estimate_disagreement(out.hypothesis, Hyperplane(Eigen::Vector2d(1, 0), 3.0),
                                  DistributionSpec::uniform_ball(2), 10'000, rng),
            0.0);
}

TEST(Mqs2d, CentralLineWithinEpsilon) {
  int ok = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng({11, t});
    const Hyperplane h(sample_unit_vector(2, rng), 0.0);
    Oracle o(h);
    const PacOutcome out = label_mqs_pac_2d(0.01, o);
    ok += estimate_disagreement(out.hypothesis, h, DistributionSpec::uniform_ball(2), 100'000, rng) <= 0.01;
  }
  EXPECT_GE(ok, 95);
}

TEST(Mqs2d, CubeRootScaling) {
  double coarse = 0.0;
  double fine = 0.0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng({12, t});
    const Hyperplane h = sample_uniform_offset_hyperplane(2, 1.0, rng);
    Oracle a(h);
    Oracle b(h);
    coarse += static_cast<double>(label_mqs_pac_2d(0.04, a).ledger.total());
    fine += static_cast<double>(label_mqs_pac_2d(0.005, b).ledger.total());
  }
  EXPECT_LE(fine / coarse, 2.2);
  EXPECT_EQ(mqs2d_vertex_count(0.04), static_cast<std::size_t>(std::ceil(2.0 * std::pow(0.04, -1.0 / 3.0))));
}

TEST(Mqs2d, RejectsBadInputs) {
  Oracle o3(Hyperplane(Eigen::Vector3d(1, 0, 0), 0.0));
  EXPECT_THROW(label_mqs_pac_2d(0.05, o3), ContractViolation);
  Oracle o2(Hyperplane(Eigen::Vector2d(1, 0), 0.0));
  EXPECT_THROW(label_mqs_pac_2d(0.0, o2), ContractViolation);
}

}  // namespace
}  // namespace infdim
