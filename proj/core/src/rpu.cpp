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

#include "infdim/rpu.hpp"

#include <algorithm>
#include <cmath>

#include "infdim/errors.hpp"

namespace infdim {
namespace {

// Answers Query(Q, subsample list) incrementally: new batches are labeled
// (or located in the label order) and merged into one comparison order.
class SubsampleQuerier {
 public:
  SubsampleQuerier(std::span<const Point> sample, QueryKind kind, ComparisonLabeling mode, Oracle& oracle,
                   ConstraintSet& constraints)
      : sample_(sample),
        kind_(kind),
        mode_(mode),
        oracle_(oracle),
        constraints_(constraints),
        known_(sample.size(), Sign::Zero) {}

  void query(std::span<const std::size_t> batch) {
    if (kind_ == QueryKind::Label || mode_ == ComparisonLabeling::All) {
      for (auto i : batch) {
        QueryRecord r = oracle_.label_query(sample_[i]);
        known_[i] = r.answer;
        constraints_.add(r);
      }
    }
    if (kind_ == QueryKind::Label) return;

    std::vector<QueryRecord> records;
    order_ = merge_insert(oracle_, sample_, order_, batch, records);
    constraints_.add_all(records);
    if (mode_ == ComparisonLabeling::BinarySearch) locate_sign_change();
  }

  Sign label(std::size_t i) const { return known_[i]; }

 private:
  // Labels are monotone along order_: find the adjacent (Negative, Positive)
  // pair, querying only inside the unresolved gap, then propagate.
  void locate_sign_change() {
    const auto m = static_cast<std::ptrdiff_t>(order_.size());
    std::ptrdiff_t lo = -1;
    std::ptrdiff_t hi = m;
    for (std::ptrdiff_t k = 0; k < m; ++k) {
      const Sign s = known_[order_[static_cast<std::size_t>(k)]];
      if (s == Sign::Negative) lo = k;
      if (s == Sign::Positive && hi == m) hi = k;
    }
    while (hi - lo > 1) {
      const std::ptrdiff_t mid = lo + (hi - lo) / 2;
      const std::size_t idx = order_[static_cast<std::size_t>(mid)];
      QueryRecord r = oracle_.label_query(sample_[idx]);
      known_[idx] = r.answer;
      const bool negative = r.answer == Sign::Negative;
      constraints_.add(r);
      if (negative) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    for (std::ptrdiff_t k = 0; k < m; ++k) {
      known_[order_[static_cast<std::size_t>(k)]] = k <= lo ? Sign::Negative : Sign::Positive;
    }
  }

  std::span<const Point> sample_;
  QueryKind kind_;
  ComparisonLabeling mode_;
  Oracle& oracle_;
  ConstraintSet& constraints_;
  std::vector<Sign> known_;
  std::vector<std::size_t> order_;
};

ConstraintSet make_constraints(std::size_t d, const RpuParams& params) {
  ConstraintSet c(d);
  for (const auto& r : params.known_rows) c.add_known(r);
  return c;
}

// Draws min(size, pool.size()) indices from pool without replacement.
std::vector<std::size_t> draw_without_replacement(const std::vector<std::size_t>& pool, std::size_t size, Rng& rng) {
  std::vector<std::size_t> scratch = pool;
  const std::size_t take = std::min(size, scratch.size());
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(scratch.size() - i));
    std::swap(scratch[i], scratch[j]);
  }
  scratch.resize(take);
  return scratch;
}

// Resolves the subsample (already labeled by the querier) and infers over
// the rest of `uninferred`; returns the number resolved and shrinks the set.
std::size_t infer_round(std::span<const Point> sample, const std::vector<std::size_t>& subsample,
                        const SubsampleQuerier& querier, const ConstraintSet& constraints,
                        const InferenceOptions& options, std::vector<std::size_t>& uninferred, RpuOutcome& out) {
  std::vector<char> picked(sample.size(), 0);
  for (auto i : subsample) {
    picked[i] = 1;
    out.labels[i] = querier.label(i);
    out.sources[i] = LabelSource::Queried;
  }
  std::vector<std::size_t> rest;
  std::vector<Point> zs;
  for (auto i : uninferred) {
    if (!picked[i]) {
      rest.push_back(i);
      zs.push_back(sample[i]);
    }
  }
  const auto verdicts = infer_batch(constraints, zs, options);
  std::vector<std::size_t> still;
  std::size_t resolved = subsample.size();
  for (std::size_t k = 0; k < rest.size(); ++k) {
    if (verdicts[k] == InferenceVerdict::Unknown) {
      still.push_back(rest[k]);
    } else {
      out.labels[rest[k]] = verdict_sign(verdicts[k]);
      out.sources[rest[k]] = LabelSource::Inferred;
      ++resolved;
    }
  }
  uninferred = std::move(still);
  return resolved;
}

void label_residual(std::span<const Point> sample, const std::vector<std::size_t>& residual, Oracle& oracle,
                    RpuOutcome& out) {
  for (auto i : residual) {
    out.labels[i] = oracle.label_query(sample[i]).answer;
    out.sources[i] = LabelSource::Residual;
  }
}

void require_sample(std::span<const Point> sample, const Oracle& oracle, const char* who) {
  if (sample.empty()) throw ContractViolation(std::string(who) + ": empty sample");
  for (const auto& p : sample) {
    if (p.dim() != oracle.dim()) throw ContractViolation(std::string(who) + ": dimension mismatch");
  }
}

}  // namespace

void RpuParams::validate() const {
  detail::require(epsilon > 0.0 && epsilon < 1.0, "RpuParams: epsilon must lie in (0, 1)");
  detail::require(delta > 0.0 && delta < 1.0, "RpuParams: delta must lie in (0, 1)");
  detail::require(subsample_constant > 0.0, "RpuParams: subsample_constant must be positive");
  detail::require(inference.margin > 0.0, "RpuParams: inference margin must be positive");
}

std::size_t RpuOutcome::count(LabelSource s) const {
  return static_cast<std::size_t>(std::count(sources.begin(), sources.end(), s));
}

RpuOutcome perfect_learning(std::span<const Point> sample, QueryKind kind, const RpuParams& params, Oracle& oracle,
                            Rng& rng) {
  params.validate();
  require_sample(sample, oracle, "perfect_learning");
  const std::size_t d = oracle.dim();
  const QueryLedger before = oracle.ledger();

  RpuOutcome out;
  out.labels.assign(sample.size(), Sign::Zero);
  out.sources.assign(sample.size(), LabelSource::Residual);

  ConstraintSet constraints = make_constraints(d, params);
  SubsampleQuerier querier(sample, kind, params.comparison_labels, oracle, constraints);
  std::vector<std::size_t> uninferred(sample.size());
  for (std::size_t i = 0; i < uninferred.size(); ++i) uninferred[i] = i;

  const std::size_t threshold =
      kind == QueryKind::Label ? params.residual_threshold_label : params.residual_threshold_comparison;
  std::size_t subsample_size = params.initial_subsample > 0 ? params.initial_subsample : d + 1;

  while (uninferred.size() > threshold) {
    const auto subsample = draw_without_replacement(uninferred, subsample_size, rng);
    querier.query(subsample);
    const std::size_t before_count = uninferred.size();
    const std::size_t resolved =
        infer_round(sample, subsample, querier, constraints, params.inference, uninferred, out);
    out.subsample_trace.push_back(RoundTrace{out.rounds_used, subsample.size(), before_count, resolved});
    ++out.rounds_used;
    if (2 * resolved < before_count) subsample_size *= 2;
  }
  label_residual(sample, uninferred, oracle, out);

  out.ledger.label_count = oracle.ledger().label_count - before.label_count;
  out.ledger.comparison_count = oracle.ledger().comparison_count - before.comparison_count;
  return out;
}

std::size_t pool_subsample_size(const RpuParams& params, std::size_t d, std::size_t n) {
  if (params.pool_subsample > 0) return params.pool_subsample;
  const double dd = static_cast<double>(d);
  const double k = params.subsample_constant * dd * std::log(dd + 1.0) * std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(k)));
}

std::size_t pool_rounds(const RpuParams& params, std::size_t n) {
  if (params.rounds_T > 0) return params.rounds_T;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n) / params.epsilon))));
}

RpuOutcome pool_rpu_learn(std::span<const Point> pool, const RpuParams& params, Oracle& oracle, Rng& rng,
                          QueryKind kind) {
  params.validate();
  require_sample(pool, oracle, "pool_rpu_learn");
  const std::size_t d = oracle.dim();
  const std::size_t k = pool_subsample_size(params, d, pool.size());
  const std::size_t rounds = pool_rounds(params, pool.size());
  const QueryLedger before = oracle.ledger();

  RpuOutcome out;
  out.labels.assign(pool.size(), Sign::Zero);
  out.sources.assign(pool.size(), LabelSource::Residual);
  std::vector<std::size_t> uninferred(pool.size());
  for (std::size_t i = 0; i < uninferred.size(); ++i) uninferred[i] = i;

  ConstraintSet accumulated = make_constraints(d, params);
  for (std::size_t t = 0; t < rounds && !uninferred.empty(); ++t) {
    ConstraintSet fresh = make_constraints(d, params);
    ConstraintSet& constraints = params.pool_accumulate ? accumulated : fresh;
    // A per-round querier: labels and order come from this round's subsample.
    SubsampleQuerier querier(pool, kind, params.comparison_labels, oracle, constraints);
    const auto subsample = draw_without_replacement(uninferred, k, rng);
    querier.query(subsample);
    const std::size_t before_count = uninferred.size();
    const std::size_t resolved = infer_round(pool, subsample, querier, constraints, params.inference, uninferred, out);
    out.subsample_trace.push_back(RoundTrace{t, subsample.size(), before_count, resolved});
    ++out.rounds_used;
  }
  label_residual(pool, uninferred, oracle, out);

  out.ledger.label_count = oracle.ledger().label_count - before.label_count;
  out.ledger.comparison_count = oracle.ledger().comparison_count - before.comparison_count;
  return out;
}

InferenceVerdict passive_rpu_predict(std::span<const QueryRecord> labeled_records, const Point& z,
                                     const InferenceOptions& options) {
  if (labeled_records.empty()) return InferenceVerdict::Unknown;
  ConstraintSet c(labeled_records.front().subject.base_dim());
  c.add_all(labeled_records);
  return infer(c, z, options);
}

}  // namespace infdim
