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

#include "infdim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infdim/errors.hpp"

namespace infdim {
namespace {

struct IndexedRecord {
  QueryRecord record;
  std::size_t first;
  std::size_t second;  // == first for labels
};

std::vector<IndexedRecord> indexed_queries(std::span<const Point> points, Oracle& oracle, QueryKind kind) {
  std::vector<IndexedRecord> out;
  for (std::size_t i = 0; i < points.size(); ++i) out.push_back({oracle.label_query(points[i]), i, i});
  if (kind == QueryKind::Comparison) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        out.push_back({oracle.comparison_query(points[i], points[j]), i, j});
      }
    }
  }
  return out;
}

// Whether some member of `subset` is inferred from the others.
bool subset_has_inferable(std::span<const Point> points, const std::vector<IndexedRecord>& records,
                          const std::vector<std::size_t>& subset, const InferenceOptions& options) {
  const std::size_t d = points.front().dim();
  std::vector<char> member(points.size(), 0);
  for (auto i : subset) member[i] = 1;
  for (auto x : subset) {
    ConstraintSet c(d);
    for (const auto& r : records) {
      if (!member[r.first] || !member[r.second] || r.first == x || r.second == x) continue;
      c.add(r.record);
    }
    if (infer(c, points[x], options) != InferenceVerdict::Unknown) return true;
  }
  return false;
}

double sse(std::span<const double> ys, const std::vector<double>& pred) {
  double s = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) s += (ys[i] - pred[i]) * (ys[i] - pred[i]);
  return s;
}

// Ordinary least squares y ~ a + b f.
std::pair<double, double> ols(const std::vector<double>& f, std::span<const double> ys) {
  const auto n = static_cast<double>(f.size());
  double mf = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    mf += f[i];
    my += ys[i];
  }
  mf /= n;
  my /= n;
  double sff = 0.0;
  double sfy = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sff += (f[i] - mf) * (f[i] - mf);
    sfy += (f[i] - mf) * (ys[i] - my);
  }
  const double b = sff > 0.0 ? sfy / sff : 0.0;
  return {my - b * mf, b};
}

}  // namespace

const char* to_string(ClassifierFamily f) { return f == ClassifierFamily::Tangent ? "tangent" : "uniform_offset"; }

Hyperplane sample_classifier(ClassifierFamily family, std::size_t d, Rng& rng) {
  return family == ClassifierFamily::Tangent ? sample_tangent_hyperplane(d, rng)
                                             : sample_uniform_offset_hyperplane(d, 1.0, rng);
}

std::vector<QueryRecord> all_queries(std::span<const Point> points, const Hyperplane& h, QueryKind kind) {
  Oracle oracle(h);
  std::vector<QueryRecord> out;
  for (auto& r : indexed_queries(points, oracle, kind)) out.push_back(std::move(r.record));
  return out;
}

bool has_inferable_point(std::span<const Point> points, const Hyperplane& h, QueryKind kind,
                         const InferenceOptions& options) {
  detail::require(points.size() >= 2, "has_inferable_point: need at least two points");
  Oracle oracle(h);
  const auto records = indexed_queries(points, oracle, kind);
  std::vector<std::size_t> all(points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return subset_has_inferable(points, records, all, options);
}

bool every_subset_has_inferable_point(std::span<const Point> points, const Hyperplane& h, QueryKind kind,
                                      std::size_t k, const InferenceOptions& options) {
  detail::require(k >= 2 && k <= points.size(), "every_subset_has_inferable_point: need 2 <= k <= |points|");
  Oracle oracle(h);
  const auto records = indexed_queries(points, oracle, kind);
  // Lexicographic enumeration of k-combinations.
  std::vector<std::size_t> subset(k);
  for (std::size_t i = 0; i < k; ++i) subset[i] = i;
  const std::size_t n = points.size();
  for (;;) {
    if (!subset_has_inferable(points, records, subset, options)) return false;
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
  detail::require(trials > 0, "wilson_interval: trials must be positive");
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

bool inference_failure_trial(const DistributionSpec& spec, std::size_t n, QueryKind kind, RngSeed seed,
                             ClassifierFamily family, const InferenceOptions& options) {
  Rng rng(seed);
  const Hyperplane h = sample_classifier(family, spec.dimension(), rng);
  const auto points = sample_n(spec, n, rng);
  return !has_inferable_point(points, h, kind, options);
}

GEstimate estimate_avg_inference_dimension(const DistributionSpec& spec, std::size_t n, std::size_t trials,
                                           QueryKind kind, std::uint64_t seed, ClassifierFamily family,
                                           const InferenceOptions& options) {
  detail::require(n >= 2, "estimate_avg_inference_dimension: n must be >= 2");
  detail::require(trials >= 1, "estimate_avg_inference_dimension: trials must be >= 1");
  GEstimate g;
  g.n = n;
  g.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    if (inference_failure_trial(spec, n, kind, RngSeed{seed, mix_stream(n, t)}, family, options)) ++g.failures;
  }
  g.g_hat = static_cast<double>(g.failures) / static_cast<double>(trials);
  g.wilson_interval = wilson_interval(g.failures, trials);
  return g;
}

CoverageTrial coverage_trial(const CoverageConfig& config, const DistributionSpec& spec, std::size_t n,
                             RngSeed seed) {
  detail::require(n >= 1, "coverage_trial: n must be >= 1");
  detail::require(config.fresh_points >= 1, "coverage_trial: need fresh points");
  const std::size_t d = spec.dimension();
  Rng rng(seed);
  const Hyperplane h = sample_classifier(config.family, d, rng);
  const auto train = sample_n(spec, n, rng);
  Oracle oracle(h);
  ConstraintSet c(d);
  for (const auto& x : train) c.add(oracle.label_query(x));
  if (config.kind == QueryKind::Comparison) c.add_all(sort_by_value(oracle, train).records);

  CoverageTrial trial;
  trial.ledger = oracle.ledger();
  const auto fresh = sample_n(spec, config.fresh_points, rng);
  const auto verdicts = infer_batch(c, fresh, config.inference);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    if (verdicts[i] == InferenceVerdict::Unknown) continue;
    ++covered;
    if (verdict_sign(verdicts[i]) != oracle_sign(evaluate(h, fresh[i]))) ++trial.errors;
  }
  trial.coverage = static_cast<double>(covered) / static_cast<double>(fresh.size());
  return trial;
}

CoverageEstimate estimate_coverage(const CoverageConfig& config, const DistributionSpec& spec, std::size_t n,
                                   std::size_t trials, std::uint64_t seed) {
  detail::require(trials >= 1, "estimate_coverage: trials must be >= 1");
  CoverageEstimate est;
  est.n = n;
  for (std::size_t t = 0; t < trials; ++t) {
    const CoverageTrial trial = coverage_trial(config, spec, n, RngSeed{seed, mix_stream(n, t)});
    est.queries += static_cast<std::size_t>(trial.ledger.total());
    est.errors += trial.errors;
    est.per_trial.push_back(trial.coverage);
  }
  const auto k = static_cast<double>(trials);
  double sum = 0.0;
  for (double v : est.per_trial) sum += v;
  est.mean = sum / k;
  double var = 0.0;
  for (double v : est.per_trial) var += (v - est.mean) * (v - est.mean);
  est.std = trials > 1 ? std::sqrt(var / (k - 1.0)) : 0.0;
  const double half = 1.959963984540054 * est.std / std::sqrt(k);
  est.interval = {est.mean - half, est.mean + half};
  return est;
}

const ModelFit& FitReport::model(const std::string& name) const {
  for (const auto& m : models) {
    if (m.name == name) return m;
  }
  throw ContractViolation("FitReport::model: unknown model " + name);
}

FitReport fit_growth(std::span<const double> xs, std::span<const double> ys) {
  detail::require(xs.size() == ys.size(), "fit_growth: xs and ys differ in length");
  detail::require(xs.size() >= 4, "fit_growth: need at least four points");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    detail::require(std::isfinite(xs[i]) && std::isfinite(ys[i]), "fit_growth: non-finite input");
    detail::require(xs[i] > 0.0, "fit_growth: xs must be positive");
    if (i > 0) detail::require(xs[i] > xs[i - 1], "fit_growth: xs must be strictly increasing");
  }

  FitReport report;
  auto linear_model = [&](const std::string& name, auto feature) {
    std::vector<double> f;
    for (double x : xs) f.push_back(feature(x));
    const auto [a, b] = ols(f, ys);
    std::vector<double> pred;
    for (double v : f) pred.push_back(a + b * v);
    report.models.push_back(ModelFit{name, a, b, sse(ys, pred)});
  };
  linear_model("log", [](double x) { return std::log(x); });
  linear_model("log2", [](double x) { return std::log(x) * std::log(x); });
  linear_model("linear", [](double x) { return x; });

  ModelFit power{"power", 0.0, 0.0, std::numeric_limits<double>::infinity()};
  if (std::all_of(ys.begin(), ys.end(), [](double y) { return y > 0.0; })) {
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      lx.push_back(std::log(xs[i]));
      ly.push_back(std::log(ys[i]));
    }
    const auto [la, c] = ols(lx, ly);
    power.a = std::exp(la);
    power.b = c;
    std::vector<double> pred;
    for (double x : xs) pred.push_back(power.a * std::pow(x, c));
    power.residual = sse(ys, pred);
  }
  report.models.push_back(power);

  double scale = 0.0;
  for (double y : ys) scale += y * y;
  const double tie = 1e-9 * std::max(scale, 1e-300);
  const ModelFit* best = &report.models.front();
  for (const auto& m : report.models) {
    if (m.residual < best->residual - tie) best = &m;
  }
  report.preferred = best->name;
  return report;
}

}  // namespace infdim
