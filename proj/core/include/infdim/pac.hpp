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

#ifndef INFDIM_PAC_HPP_
#define INFDIM_PAC_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "infdim/distributions.hpp"
#include "infdim/geometry.hpp"
#include "infdim/oracle.hpp"
#include "infdim/rng.hpp"

namespace infdim {

/// Knobs of the margin-based localization learner for homogeneous
/// separators. Round k samples only inside the band |<u_{k-1}, z>| <= b_{k-1}
/// with b_k = band_constant * 2^-k, and refits a max-margin consistent
/// separator on every label collected so far.
struct BalcanLongParams {
  double band_constant = 1.0;
  /// Labels drawn in the unrestricted first round; 0 means 4 * (d + ln(1/delta)).
  std::size_t initial_samples = 0;
  /// Labels drawn per band round; 0 means 2 * (d + ln(1/delta)).
  std::size_t samples_per_round = 0;
  /// Number of rounds; 0 means ceil(log2(band_constant / eps')).
  std::size_t rounds = 0;
  /// Rejection budget per round; exhausting it ends localization early.
  std::size_t max_draws_per_round = 2'000'000;
};

struct PacParams {
  double epsilon = 0.05;
  double delta = 0.1;
  /// Threshold pool size N = ceil(pool_constant / epsilon) unless pool_budget > 0.
  double pool_constant = 8.0;
  std::size_t pool_budget = 0;
  /// Shift repeats ceil(median_constant * ln(1/delta)) unless median_repeats > 0.
  double median_constant = 3.0;
  std::size_t median_repeats = 0;
  /// Direction target eps' = bl_error_scale * epsilon / log2(1/epsilon).
  double bl_error_scale = 1.0;
  BalcanLongParams bl{};
  double threshold_pad = 1e-6;
  /// After the binary search, label this many extra points on each side of
  /// the crossing and move the cut to the majority-consistent gap. 0 keeps
  /// the label count within ceil(log2 N) + 1.
  std::size_t threshold_verify_window = 0;
  /// Use the closed-form whitening map when the distribution has one.
  bool use_exact_isotropizer = true;
  /// Unlabeled draws for empirical whitening; 0 means 200 * d.
  std::size_t whitening_budget = 0;

  void validate() const;
  std::size_t pool_size() const;
  std::size_t repeats() const;
  double direction_target() const;
};

struct PacOutcome {
  Hyperplane hypothesis;
  QueryLedger ledger;
  double measured_error = -1.0;  // filled against ground truth by the caller
  std::size_t bl_rounds = 0;
  bool bl_starved = false;
  std::vector<double> shifts;
};

/// One draw from the (whitened) difference distribution, with the pair of
/// original points whose comparison labels it.
struct DifferenceDraw {
  Point z;
  Point x;
  Point y;
};

using DifferenceSampler = std::function<DifferenceDraw(Rng&)>;
/// Labels a draw; normally oracle.comparison_query(draw.x, draw.y).
using DifferenceLabeler = std::function<Sign(const DifferenceDraw&)>;

struct BalcanLongResult {
  Eigen::VectorXd normal;  // unit vector
  std::size_t rounds_run = 0;
  std::size_t labels_used = 0;
  bool starved = false;
};

BalcanLongResult balcan_long(const DifferenceSampler& sampler, const DifferenceLabeler& labeler, double eps_prime,
                             double delta, const BalcanLongParams& params, Rng& rng);

/// <u, x> for each point, in input order.
std::vector<double> project(std::span<const Point> points, const Eigen::VectorXd& u);

struct ThresholdResult {
  /// Cut value t on the projection axis; the hypothesis is <u, x> - t.
  double threshold = 0.0;
  /// Offset b' = -t of the hypothesis <u, x> + b'.
  double shift = 0.0;
  std::size_t labels_used = 0;
  bool one_sided = false;
};

/// Sorts the projections (free), binary-searches the label sign change along
/// the sorted order and cuts at the midpoint of the crossing gap. When every
/// label agrees the cut is placed pad beyond the extreme projection.
/// `queried_points` are the points handed to the oracle (original space);
/// projections are computed from `projected_points`.
ThresholdResult threshold(std::span<const Point> projected_points, std::span<const Point> queried_points,
                          const Eigen::VectorXd& u, Oracle& oracle, double pad = 1e-6, std::size_t verify_window = 0);

/// Convenience overload when the oracle sees the projected points directly.
ThresholdResult threshold(std::span<const Point> points, const Eigen::VectorXd& u, Oracle& oracle, double pad = 1e-6,
                          std::size_t verify_window = 0);

/// Comparison-pool PAC learner: whitens, learns the normal from comparisons
/// on difference pairs, then takes the median of repeated threshold shifts.
PacOutcome comparison_pool_pac(const DistributionSpec& spec, const PacParams& params, Oracle& oracle, Rng& rng);

struct Mqs2dParams {
  /// Boundary query count k = ceil(vertex_constant * eps^(-1/3)), at least 3.
  double vertex_constant = 2.0;
};

/// Label-only membership-query learner on the uniform unit disk.
PacOutcome label_mqs_pac_2d(double epsilon, Oracle& oracle, const Mqs2dParams& params = {});

/// Number of regular boundary vertices used by label_mqs_pac_2d.
std::size_t mqs2d_vertex_count(double epsilon, const Mqs2dParams& params = {});

/// Monte Carlo disagreement mass between two hyperplanes under spec.
double estimate_disagreement(const Hyperplane& a, const Hyperplane& b, const DistributionSpec& spec,
                             std::size_t samples, Rng& rng);

}  // namespace infdim

#endif  // INFDIM_PAC_HPP_
