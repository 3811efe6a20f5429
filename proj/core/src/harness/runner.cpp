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

#include "infdim/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "infdim/analysis.hpp"
#include "infdim/pac.hpp"
#include "infdim/pointloc.hpp"
#include "infdim/rpu.hpp"

namespace infdim::harness {
namespace {

struct Task {
  std::size_t kind_index;
  std::size_t grid_index;
  std::size_t trial;
};

std::uint64_t grid_key(double g) {
  if (g == std::floor(g) && g >= 0.0 && g < 0x1.0p63) return static_cast<std::uint64_t>(g);
  return std::bit_cast<std::uint64_t>(g);
}

void fill_counts(ResultRow& row, const QueryLedger& ledger) {
  row.labels = ledger.label_count;
  row.comparisons = ledger.comparison_count;
  row.total = ledger.total();
}

std::uint64_t count_label_errors(const std::vector<Point>& points, const std::vector<Sign>& labels,
                                 const Hyperplane& h) {
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (labels[i] != oracle_sign(evaluate(h, points[i]))) ++errors;
  }
  return errors;
}

void rpu_trial(ResultRow& row, const ExperimentConfig& c, std::size_t d, std::size_t n, QueryKind kind,
               RngSeed seed) {
  Rng rng(seed);
  const Hyperplane h = sample_classifier(c.classifier, d, rng);
  const auto points = sample_n(c.distribution_spec(d), n, rng);
  Oracle oracle(h);
  const RpuOutcome out = perfect_learning(points, kind, c.rpu, oracle, rng);
  fill_counts(row, out.ledger);
  row.errors = count_label_errors(points, out.labels, h);
  row.metric = static_cast<double>(out.count(LabelSource::Inferred)) / static_cast<double>(n);
}

void pac_trial(ResultRow& row, const ExperimentConfig& c, double epsilon, RngSeed seed) {
  Rng rng(seed);
  const auto spec = c.distribution_spec(c.dimension);
  const Hyperplane h = sample_classifier(c.classifier, c.dimension, rng);
  Oracle oracle(h);
  PacParams params = c.pac;
  params.epsilon = epsilon;
  const PacOutcome out = comparison_pool_pac(spec, params, oracle, rng);
  fill_counts(row, out.ledger);
  row.metric = estimate_disagreement(out.hypothesis, h, spec, c.evaluation_samples, rng);
  row.errors = static_cast<std::uint64_t>(std::llround(row.metric * static_cast<double>(c.evaluation_samples)));
}

void mqs_trial(ResultRow& row, const ExperimentConfig& c, double epsilon, RngSeed seed) {
  Rng rng(seed);
  const auto disk = DistributionSpec::uniform_ball(2);
  const Hyperplane h = sample_classifier(c.classifier, 2, rng);
  Oracle oracle(h);
  const PacOutcome out = label_mqs_pac_2d(epsilon, oracle, c.mqs);
  fill_counts(row, out.ledger);
  row.metric = estimate_disagreement(out.hypothesis, h, disk, c.evaluation_samples, rng);
  row.errors = static_cast<std::uint64_t>(std::llround(row.metric * static_cast<double>(c.evaluation_samples)));
}

void run_trial(ResultRow& row, const ExperimentConfig& c, double grid, QueryKind kind, RngSeed seed) {
  const auto n = static_cast<std::size_t>(grid);
  switch (c.kind) {
    case ExperimentKind::RpuVsN:
      rpu_trial(row, c, c.dimension, n, kind, seed);
      break;
    case ExperimentKind::RpuVsD:
      rpu_trial(row, c, n, c.sample_size, kind, seed);
      break;
    case ExperimentKind::PacErrorCurve:
      pac_trial(row, c, grid, seed);
      break;
    case ExperimentKind::Mqs2d:
      mqs_trial(row, c, grid, seed);
      break;
    case ExperimentKind::PointlocDepth: {
      const DepthTrial t = depth_trial(c.distribution_spec(c.dimension + 1), c.dimension, n, seed, c.rpu, kind);
      fill_counts(row, t.signature.ledger);
      row.errors = t.errors;
      row.metric = static_cast<double>(t.signature.depth);
      break;
    }
    case ExperimentKind::GEstimate: {
      const bool failed =
          inference_failure_trial(c.distribution_spec(c.dimension), n, kind, seed, c.classifier, c.rpu.inference);
      row.metric = failed ? 1.0 : 0.0;
      break;
    }
    case ExperimentKind::CoverageCurve: {
      const CoverageConfig cc{kind, c.classifier, c.fresh_points, c.rpu.inference};
      const CoverageTrial t = coverage_trial(cc, c.distribution_spec(c.dimension), n, seed);
      fill_counts(row, t.ledger);
      row.errors = t.errors;
      row.metric = t.coverage;
      break;
    }
  }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, const RowSink& sink) {
  config.validate();
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < config.query_kinds.size(); ++k) {
    for (std::size_t g = 0; g < config.grid.size(); ++g) {
      for (std::size_t t = 0; t < config.trials; ++t) tasks.push_back({k, g, t});
    }
  }
  std::vector<ResultRow> rows(tasks.size());
  std::vector<char> done(tasks.size(), 0);
  std::size_t next_emit = 0;
  std::mutex emit_mutex;
  std::atomic<std::size_t> next_task{0};

  auto work = [&] {
    for (;;) {
      const std::size_t i = next_task.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      const QueryKind kind = config.query_kinds[task.kind_index];
      const double grid = config.grid[task.grid_index];
      ResultRow& row = rows[i];
      row.experiment = std::string(to_string(config.kind)) + ":" + to_string(kind);
      row.seed = config.seed;
      row.grid = grid;
      row.trial = task.trial;
      const auto start = std::chrono::steady_clock::now();
      try {
        run_trial(row, config, grid, kind, RngSeed{config.seed, mix_stream(grid_key(grid), task.trial)});
      } catch (const std::exception& e) {
        row.failure = e.what();
        row.metric = std::numeric_limits<double>::quiet_NaN();
      }
      if (config.timing) {
        row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
      if (!sink) continue;
      std::lock_guard lock(emit_mutex);
      done[i] = 1;
      while (next_emit < tasks.size() && done[next_emit]) sink(rows[next_emit++]);
    }
  };

  const std::size_t workers = std::min(config.workers, std::max<std::size_t>(tasks.size(), 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

std::size_t reliability_violations(const ExperimentConfig& config, const std::vector<ResultRow>& rows) {
  if (!config.reliability_checked()) return 0;
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ResultRow& r) { return r.errors > 0; }));
}

}  // namespace infdim::harness
