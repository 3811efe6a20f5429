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

#ifndef INFDIM_ANALYSIS_HPP_
#define INFDIM_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infdim/distributions.hpp"
#include "infdim/inference.hpp"
#include "infdim/oracle.hpp"

namespace infdim {

/// Which hidden classifiers Monte Carlo estimates draw.
enum class ClassifierFamily {
  Tangent,        // tangent to the unit ball, interior positive
  UniformOffset,  // uniform normal, offset uniform in [-1, 1]
};

const char* to_string(ClassifierFamily f);
Hyperplane sample_classifier(ClassifierFamily family, std::size_t d, Rng& rng);

/// Every answer of the given kind on points: all labels, plus all pairwise
/// comparisons for Comparison kind. Uses its own oracle so no experiment
/// ledger is touched.
std::vector<QueryRecord> all_queries(std::span<const Point> points, const Hyperplane& h, QueryKind kind);

/// Whether some x in points is inferred by Q(points - {x}) under h.
bool has_inferable_point(std::span<const Point> points, const Hyperplane& h, QueryKind kind,
                         const InferenceOptions& options = {});

/// Whether every k-subset of points contains a point inferable from the
/// rest of the subset. Exhaustive; stops at the first failing subset.
bool every_subset_has_inferable_point(std::span<const Point> points, const Hyperplane& h, QueryKind kind,
                                      std::size_t k, const InferenceOptions& options = {});

/// Wilson score interval for `successes` out of `trials` at normal quantile z.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct GEstimate {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double g_hat = 0.0;
  std::pair<double, double> wilson_interval{0.0, 0.0};
};

/// One draw of (classifier, n-point sample) from seed; true iff no point
/// of the sample is inferable from the rest.
bool inference_failure_trial(const DistributionSpec& spec, std::size_t n, QueryKind kind, RngSeed seed,
                             ClassifierFamily family = ClassifierFamily::Tangent,
                             const InferenceOptions& options = {});

/// Monte Carlo estimate of the average inference dimension g(n): the
/// fraction of (sample, classifier) draws with no point inferable from the
/// rest. Trial t uses stream mix_stream(n, t) of seed.
GEstimate estimate_avg_inference_dimension(const DistributionSpec& spec, std::size_t n, std::size_t trials,
                                           QueryKind kind, std::uint64_t seed,
                                           ClassifierFamily family = ClassifierFamily::Tangent,
                                           const InferenceOptions& options = {});

struct CoverageConfig {
  QueryKind kind = QueryKind::Comparison;
  ClassifierFamily family = ClassifierFamily::Tangent;
  std::size_t fresh_points = 10'000;
  InferenceOptions inference{};
};

struct CoverageEstimate {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;
  /// Normal-approximation 95% interval for the mean over trials.
  std::pair<double, double> interval{0.0, 0.0};
  std::vector<double> per_trial;
  std::size_t queries = 0;  // total oracle answers used across trials
  std::size_t errors = 0;   // inferred labels contradicting ground truth
};

struct CoverageTrial {
  double coverage = 0.0;
  std::size_t errors = 0;
  QueryLedger ledger;
};

CoverageTrial coverage_trial(const CoverageConfig& config, const DistributionSpec& spec, std::size_t n,
                             RngSeed seed);

/// Per trial: n training points with every query of the configured kind
/// answered, coverage = fraction of fresh points whose label is inferred.
/// Trial t uses stream mix_stream(n, t) of seed.
CoverageEstimate estimate_coverage(const CoverageConfig& config, const DistributionSpec& spec, std::size_t n,
                                   std::size_t trials, std::uint64_t seed);

struct ModelFit {
  std::string name;
  double a = 0.0;
  double b = 0.0;  // slope, or the exponent c for the power model
  double residual = 0.0;  // sum of squared errors in y
};

struct FitReport {
  std::vector<ModelFit> models;  // log, log2, linear, power (in this order)
  std::string preferred;

  const ModelFit& model(const std::string& name) const;
};

/// Least-squares fits of a + b log x, a + b log^2 x, a + b x and a x^c. The
/// power model is fitted in log-log space and skipped (infinite residual)
/// when some y is not positive. Residuals within a relative 1e-9 of each
/// other tie, and ties go to the earlier model.
FitReport fit_growth(std::span<const double> xs, std::span<const double> ys);

}  // namespace infdim

#endif  // INFDIM_ANALYSIS_HPP_
