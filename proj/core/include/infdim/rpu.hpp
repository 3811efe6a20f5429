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

#ifndef INFDIM_RPU_HPP_
#define INFDIM_RPU_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "infdim/inference.hpp"
#include "infdim/oracle.hpp"
#include "infdim/rng.hpp"

namespace infdim {

/// How a Comparison-kind learner obtains labels for its subsample.
enum class ComparisonLabeling {
  /// Label every subsampled point.
  All,
  /// Labels are monotone along the comparison order, so only the sign change
  /// is located, by binary search over the points whose label is not yet
  /// implied. Yields the same version space as All.
  BinarySearch,
};

struct RpuParams {
  /// Starting subsample size; 0 means d + 1.
  std::size_t initial_subsample = 0;
  /// Perfect-Learning stops once at most this many points are uninferred.
  std::size_t residual_threshold_label = 1;
  std::size_t residual_threshold_comparison = 2;
  /// Pool learner rounds; 0 means ceil(log2(n / epsilon)).
  std::size_t rounds_T = 0;
  double epsilon = 0.05;
  double delta = 0.1;
  /// Pool learner subsample k = ceil(c * d * ln(d + 1) * ln n); used when
  /// pool_subsample is 0.
  double subsample_constant = 10.0;
  std::size_t pool_subsample = 0;
  /// Pool learner: keep answers from earlier rounds in the version space.
  bool pool_accumulate = false;
  ComparisonLabeling comparison_labels = ComparisonLabeling::BinarySearch;
  InferenceOptions inference{};
  /// Side rows <w, r> >= 0 known to hold for the hidden lifted weight.
  std::vector<Eigen::VectorXd> known_rows;

  void validate() const;
};

enum class LabelSource { Queried, Inferred, Residual };

struct RoundTrace {
  std::size_t round = 0;
  std::size_t subsample_size = 0;
  std::size_t uninferred_before = 0;
  std::size_t inferred_count = 0;  // includes the subsampled points
};

struct RpuOutcome {
  /// Final label of every input point; never Zero.
  std::vector<Sign> labels;
  std::vector<LabelSource> sources;
  QueryLedger ledger;
  std::size_t rounds_used = 0;
  std::vector<RoundTrace> subsample_trace;

  std::size_t count(LabelSource s) const;
};

/// The doubling Perfect-Learning loop. Draws subsamples from the uninferred
/// points, queries the cumulative subsample list (labels, plus one global
/// comparison order for Comparison kind), infers over the uninferred set
/// with all accumulated answers, doubles the subsample size whenever fewer
/// than half were inferred, and finally label-queries the residual.
RpuOutcome perfect_learning(std::span<const Point> sample, QueryKind kind, const RpuParams& params, Oracle& oracle,
                            Rng& rng);

/// Fixed-size subsample learner: T rounds of subsample, query labels and
/// comparisons on the subsample, infer over the remaining pool, restrict;
/// the residual after T rounds is label-queried.
RpuOutcome pool_rpu_learn(std::span<const Point> pool, const RpuParams& params, Oracle& oracle, Rng& rng,
                          QueryKind kind = QueryKind::Comparison);

/// Subsample size k used by pool_rpu_learn for a pool of n points in R^d.
std::size_t pool_subsample_size(const RpuParams& params, std::size_t d, std::size_t n);
/// Round count T used by pool_rpu_learn for a pool of n points.
std::size_t pool_rounds(const RpuParams& params, std::size_t n);

/// Passive reliable prediction: infer z from every recorded answer.
InferenceVerdict passive_rpu_predict(std::span<const QueryRecord> labeled_records, const Point& z,
                                     const InferenceOptions& options = {});

}  // namespace infdim

#endif  // INFDIM_RPU_HPP_
