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

// Acceptance suite. Prints one PASS/FAIL line per criterion; `--only N`
// restricts the run to criterion N. Exit status 1 when any selected
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "infdim/analysis.hpp"
#include "infdim/distributions.hpp"
#include "infdim/harness/config.hpp"
#include "infdim/harness/result.hpp"
#include "infdim/harness/runner.hpp"
#include "infdim/pointloc.hpp"
#include "infdim/rpu.hpp"
#include "support/witness.hpp"

namespace {

using namespace infdim;
using namespace infdim::harness;

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool pass;
  std::string detail;
};

std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Mean of a row field per grid value, in grid order, for one experiment id.
std::vector<double> grid_means(const std::vector<ResultRow>& rows, const std::string& experiment,
                               const std::vector<double>& grid, double ResultRow::*field) {
  std::vector<double> out;
  for (double g : grid) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : rows) {
      if (r.experiment != experiment || r.grid != g) continue;
      sum += r.*field;
      ++count;
    }
    out.push_back(count ? sum / static_cast<double>(count) : std::nan(""));
  }
  return out;
}

std::vector<double> grid_mean_totals(const std::vector<ResultRow>& rows, const std::string& experiment,
                                     const std::vector<double>& grid) {
  std::vector<double> out;
  for (double g : grid) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : rows) {
      if (r.experiment != experiment || r.grid != g) continue;
      sum += static_cast<double>(r.total);
      ++count;
    }
    out.push_back(sum / static_cast<double>(count));
  }
  return out;
}

std::string csv_of(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  emit(rows, OutputFormat::Csv, out);
  return out.str();
}

ExperimentConfig query_growth_n_config() {
  auto c = default_config(ExperimentKind::RpuVsN);
  c.seed = kSeed;
  c.dimension = 3;
  c.distribution = DistributionKind::UniformBall;
  c.classifier = ClassifierFamily::Tangent;
  c.trials = 50;
  return c;
}

ExperimentConfig pointloc_config() {
  auto c = default_config(ExperimentKind::PointlocDepth);
  c.seed = kSeed;
  c.dimension = 3;
  c.distribution = DistributionKind::Gaussian;
  c.grid = {64, 128, 256, 512, 1024};
  c.trials = 50;
  return c;
}

// Runs are cached per (experiment, workers) so criterion 9 can reuse them.
const std::vector<ResultRow>& cached_run(const ExperimentConfig& base, std::size_t workers, int repeat = 0) {
  static std::map<std::tuple<int, std::size_t, int>, std::vector<ResultRow>> cache;
  const auto key = std::make_tuple(static_cast<int>(base.kind), workers, repeat);
  auto it = cache.find(key);
  if (it == cache.end()) {
    ExperimentConfig c = base;
    c.workers = workers;
    it = cache.emplace(key, run_experiment(c)).first;
  }
  return it->second;
}

Verdict reliability() {
  std::size_t inferred = 0;
  std::size_t wrong = 0;
  for (std::size_t d : {2u, 3u, 5u}) {
    for (auto dist : {DistributionKind::UniformBall, DistributionKind::Gaussian}) {
      auto c = default_config(ExperimentKind::RpuVsN);
      c.seed = kSeed + d;
      c.dimension = d;
      c.distribution = dist;
      c.grid = {512};
      c.trials = 10;
      c.workers = worker_count();
      for (const auto& r : run_experiment(c)) {
        wrong += r.errors;
        inferred += static_cast<std::size_t>(std::llround(r.metric * r.grid));
      }
    }
    auto p = default_config(ExperimentKind::PointlocDepth);
    p.seed = kSeed + d;
    p.dimension = d;
    p.grid = {512};
    p.trials = 10;
    p.workers = worker_count();
    for (const auto& r : run_experiment(p)) {
      wrong += r.errors;
      inferred += static_cast<std::size_t>(r.grid) - std::min<std::size_t>(r.labels, static_cast<std::size_t>(r.grid));
    }
  }
  return {wrong == 0 && inferred >= 10'000,
          fmt("%zu disagreements over %zu inferred labels (rpu + pointloc, d in {2,3,5})", wrong, inferred)};
}

Verdict query_growth_n() {
  const auto c = query_growth_n_config();
  const auto& rows = cached_run(c, worker_count());
  std::size_t errors = 0;
  for (const auto& r : rows) errors += r.errors;
  const auto label = grid_mean_totals(rows, "rpu_vs_n:label", c.grid);
  const auto comp = grid_mean_totals(rows, "rpu_vs_n:comparison", c.grid);
  const double ratio = comp.back() / label.back();
  const FitReport lf = fit_growth(c.grid, label);
  const FitReport cf = fit_growth(c.grid, comp);
  const bool comp_log = cf.preferred == "log" || cf.preferred == "log2";
  const bool label_super = lf.preferred != "log";
  return {errors == 0 && ratio <= 0.25 && comp_log && label_super,
          fmt("n=1024 mean totals label %.1f comparison %.1f, ratio %.3f (need <= 0.25); fits: comparison %s, "
              "label %s; errors %zu",
              label.back(), comp.back(), ratio, cf.preferred.c_str(), lf.preferred.c_str(), errors)};
}

Verdict query_growth_d() {
  auto c = default_config(ExperimentKind::RpuVsD);
  c.seed = kSeed;
  c.sample_size = 256;
  c.grid = {2, 3, 4, 5, 6, 7, 8};
  c.trials = 50;
  c.workers = worker_count();
  const auto rows = run_experiment(c);
  std::size_t errors = 0;
  for (const auto& r : rows) errors += r.errors;
  const auto means = grid_mean_totals(rows, "rpu_vs_d:comparison", c.grid);
  const double exponent = fit_growth(c.grid, means).model("power").b;
  return {errors == 0 && exponent <= 1.5,
          fmt("power-law exponent %.3f (need <= 1.5); mean queries d=2 %.1f, d=8 %.1f; errors %zu", exponent,
              means.front(), means.back(), errors)};
}

Verdict oracle_equivalence() {
  std::size_t contradictions = 0;
  std::size_t definite = 0;
  std::size_t both_found_but_definite = 0;
  const auto spec = DistributionSpec::gaussian(2);
  for (std::uint64_t t = 0; t < 500; ++t) {
    Rng rng({kSeed, mix_stream(4, t)});
    const Hyperplane h = sample_uniform_offset_hyperplane(2, 1.0, rng);
    Oracle o(h);
    const std::size_t count = 1 + rng.below(12);
    std::vector<QueryRecord> records;
    for (std::size_t i = 0; i < count; ++i) {
      if (rng.uniform() < 0.5) {
        records.push_back(o.label_query(sample(spec, rng)));
      } else {
        records.push_back(o.comparison_query(sample(spec, rng), sample(spec, rng)));
      }
    }
    ConstraintSet c(2);
    c.add_all(records);
    const Point z = sample(spec, rng);
    const auto verdict = infer(c, z);
    const auto search = testing::search_witnesses(records, z, 100'000, rng);
    definite += verdict != InferenceVerdict::Unknown;
    contradictions += testing::contradicts(verdict, search);
    both_found_but_definite +=
        search.labels_positive && search.labels_negative && verdict != InferenceVerdict::Unknown;
  }
  return {contradictions == 0 && both_found_but_definite == 0,
          fmt("500 instances, %zu definite verdicts, %zu contradicted by a sampled witness", definite, contradictions)};
}

Verdict g_trend() {
  auto c = default_config(ExperimentKind::GEstimate);
  c.seed = kSeed;
  c.dimension = 2;
  c.distribution = DistributionKind::UniformBall;
  c.grid = {8, 12, 16, 20};
  c.trials = 2000;
  c.workers = worker_count();
  const auto rows = run_experiment(c);
  std::vector<std::size_t> failures(c.grid.size(), 0);
  for (const auto& r : rows) {
    const auto g = static_cast<std::size_t>(std::find(c.grid.begin(), c.grid.end(), r.grid) - c.grid.begin());
    failures[g] += r.metric > 0.5;
  }
  bool decreasing = true;
  std::string values;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (i > 0 && failures[i] >= failures[i - 1]) decreasing = false;
    values += fmt("%sg(%g)=%.4f", i ? " " : "", c.grid[i], static_cast<double>(failures[i]) / 2000.0);
  }
  const auto w8 = wilson_interval(failures.front(), 2000);
  const auto w20 = wilson_interval(failures.back(), 2000);
  const bool separated = w20.second < w8.first;
  return {decreasing && separated, values + fmt("; Wilson upper g(20) %.4f vs lower g(8) %.4f", w20.second, w8.first)};
}

Verdict pac() {
  auto c = default_config(ExperimentKind::PacErrorCurve);
  c.seed = kSeed;
  c.dimension = 3;
  c.distribution = DistributionKind::Gaussian;
  c.grid = {0.05, 0.0125};
  c.trials = 100;
  c.pac.delta = 0.1;
  c.workers = worker_count();
  const auto rows = run_experiment(c);
  std::size_t within = 0;
  for (const auto& r : rows) within += r.grid == 0.05 && r.metric <= 0.05;
  const auto means = grid_mean_totals(rows, "pac_error_curve:comparison", c.grid);
  const double ratio = means[1] / means[0];
  return {within >= 90 && ratio <= 2.5,
          fmt("eps=0.05: %zu/100 trials within eps (need >= 90); mean queries %.1f -> %.1f at eps=0.0125, ratio %.2f "
              "(need <= 2.5)",
              within, means[0], means[1], ratio)};
}

Verdict mqs() {
  auto c = default_config(ExperimentKind::Mqs2d);
  c.seed = kSeed;
  c.grid = {0.04, 0.005};
  c.trials = 100;
  c.workers = worker_count();
  const auto rows = run_experiment(c);
  std::size_t within[2] = {0, 0};
  for (const auto& r : rows) within[r.grid == 0.04 ? 0 : 1] += r.metric <= r.grid;
  const auto means = grid_mean_totals(rows, "mqs2d:label", c.grid);
  const double ratio = means[1] / means[0];
  return {within[0] >= 95 && within[1] >= 95 && ratio <= 2.2,
          fmt("within eps: %zu/100 at 0.04, %zu/100 at 0.005; mean queries %.1f -> %.1f, ratio %.2f (need <= 2.2)",
              within[0], within[1], means[0], means[1], ratio)};
}

Verdict point_location() {
  const auto c = pointloc_config();
  const auto& rows = cached_run(c, worker_count());
  std::size_t errors = 0;
  for (const auto& r : rows) errors += r.errors;
  const auto depth = grid_means(rows, "pointloc_depth:comparison", c.grid, &ResultRow::metric);
  bool falling = true;
  std::string values;
  for (std::size_t i = 0; i < depth.size(); ++i) {
    if (i > 0 && depth[i] / c.grid[i] >= depth[i - 1] / c.grid[i - 1]) falling = false;
    values += fmt("%s%g:%.1f", i ? " " : "", c.grid[i], depth[i]);
  }
  return {errors == 0 && falling && depth.back() <= 512.0,
          fmt("sign errors %zu; mean depth by n %s; depth/n strictly decreasing: %s", errors, values.c_str(),
              falling ? "yes" : "no")};
}

Verdict determinism() {
  bool same = true;
  std::string detail;
  for (const auto& c : {query_growth_n_config(), pointloc_config()}) {
    const std::string a = csv_of(cached_run(c, worker_count()));
    const std::string b = csv_of(cached_run(c, 1));
    const std::string d = csv_of(cached_run(c, 8, 1));
    const bool ok = a == b && b == d;
    same = same && ok;
    detail += fmt("%s%s: %zu bytes %s", detail.empty() ? "" : "; ", to_string(c.kind), a.size(),
                  ok ? "identical at workers 1/8/" : "DIFFER at workers 1/8/");
    detail += std::to_string(worker_count());
  }
  return {same, detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria{
      {1, "reliability", reliability},       {2, "comparison advantage in n", query_growth_n},
      {3, "dimension scaling", query_growth_d}, {4, "inference oracle equivalence", oracle_equivalence},
      {5, "average inference dimension trend", g_trend}, {6, "comparison pool PAC", pac},
      {7, "2-D MQS learner", mqs},              {8, "point location depth", point_location},
      {9, "determinism", determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = c.run();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), s);
    std::fflush(stdout);
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
