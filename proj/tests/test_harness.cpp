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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "infdim/errors.hpp"
#include "infdim/harness/config.hpp"
#include "infdim/harness/result.hpp"
#include "infdim/harness/runner.hpp"

namespace infdim::harness {
namespace {

std::string emit_string(const std::vector<ResultRow>& rows, OutputFormat f = OutputFormat::Csv) {
  std::ostringstream out;
  emit(rows, f, out);
  return out.str();
}

std::vector<ResultRow> sample_rows() {
  ResultRow a{"rpu_vs_n:label", 1, 1024, 0, 300, 0, 300, 0, 0.7021484375, 12.5, ""};
  ResultRow b{"rpu_vs_n:comparison", 18446744073709551615ull, 0.0125, 3, 7, 80, 87, 0, 1.0 / 3.0, 0.0, ""};
  ResultRow c{"pac_error_curve:comparison", 9, 0.05, 99, 120, 40, 160, 1234, 0.01234, 0.0, ""};
  return {a, b, c};
}

TEST(Emit, EmptyRowsGiveHeaderOnly) {
  EXPECT_EQ(emit_string({}), std::string(kCsvHeader) + "\n");
  EXPECT_EQ(emit_string({}, OutputFormat::Jsonl), "");
}

TEST(Emit, ThreeRowsFourLinesLfOnly) {
  const std::string s = emit_string(sample_rows());
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);
  EXPECT_EQ(s.find('\r'), std::string::npos);
  EXPECT_EQ(s.substr(0, kCsvHeader.size()), kCsvHeader);
}

TEST(Emit, SixSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_number(1024), "1024");
  EXPECT_EQ(format_number(1234567.0), "1.23457e+06");
  EXPECT_EQ(format_number(0.0125), "0.0125");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(csv_line(sample_rows()[1]), "rpu_vs_n:comparison,18446744073709551615,0.0125,3,7,80,87,0,0.333333,0");
}

TEST(Emit, CsvRoundTrip) {
  const auto rows = sample_rows();
  const auto back = parse_csv(emit_string(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].experiment, rows[i].experiment);
    EXPECT_EQ(back[i].seed, rows[i].seed);
    EXPECT_EQ(back[i].trial, rows[i].trial);
    EXPECT_EQ(back[i].labels, rows[i].labels);
    EXPECT_EQ(back[i].comparisons, rows[i].comparisons);
    EXPECT_EQ(back[i].total, rows[i].total);
    EXPECT_EQ(back[i].errors, rows[i].errors);
    EXPECT_NEAR(back[i].grid, rows[i].grid, 1e-5 * std::abs(rows[i].grid));
    EXPECT_NEAR(back[i].metric, rows[i].metric, 1e-5 * std::abs(rows[i].metric));
    EXPECT_NEAR(back[i].ms, rows[i].ms, 1e-5 * std::abs(rows[i].ms));
  }
  EXPECT_EQ(emit_string(back), emit_string(rows));
}

TEST(Emit, ParseRejectsMalformed) {
  EXPECT_THROW(parse_csv(""), std::runtime_error);
  EXPECT_THROW(parse_csv("a,b\n"), std::runtime_error);
  EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\nx,1,2\n"), std::runtime_error);
  EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\nx,-1,2,0,0,0,0,0,0,0\n"), std::runtime_error);
}

TEST(Emit, JsonLines) {
  const std::string s = emit_string(sample_rows(), OutputFormat::Jsonl);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 3);
  EXPECT_NE(s.find("\"metric\":0.333333"), std::string::npos);
}

TEST(Emit, UnwritablePathNamesThePath) {
  try {
    emit(sample_rows(), OutputFormat::Csv, std::filesystem::path("/nonexistent-dir/out.csv"));
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
  }
}

TEST(Config, DefaultsValidate) {
  for (auto k : all_experiment_kinds()) {
    EXPECT_NO_THROW(default_config(k).validate()) << to_string(k);
    EXPECT_EQ(parse_experiment_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_experiment_kind("nope"), ConfigError);
}

TEST(Config, ParseOverridesDefaults) {
  const auto c = parse_config(R"({"schema_version": 1, "experiment": "rpu_vs_n", "grid": [1, 2, 4],
      "trials": 3, "seed": 99, "query_kinds": ["comparison"], "rpu": {"comparison_labels": "all"},
      "format": "jsonl"})");
  EXPECT_EQ(c.kind, ExperimentKind::RpuVsN);
  EXPECT_EQ(c.grid, (std::vector<double>{1, 2, 4}));
  EXPECT_EQ(c.trials, 3u);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.query_kinds, std::vector<QueryKind>{QueryKind::Comparison});
  EXPECT_EQ(c.rpu.comparison_labels, ComparisonLabeling::All);
  EXPECT_EQ(c.format, OutputFormat::Jsonl);
  EXPECT_EQ(c.dimension, 3u);
}

TEST(Config, DumpRoundTrips) {
  for (auto k : all_experiment_kinds()) {
    const auto c = default_config(k);
    const auto back = parse_config(dump_config(c));
    EXPECT_EQ(dump_config(back), dump_config(c));
  }
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_config(R"({"experiment": "rpu_vs_n"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 2, "experiment": "rpu_vs_n"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "rpu_vs_n", "bogus": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "rpu_vs_n", "grid": []})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "rpu_vs_n", "grid": [1.5]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "rpu_vs_n", "trials": 0})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "rpu_vs_n", "trials": "x"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "mqs2d", "query_kinds": ["comparison"]})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "pac_error_curve", "grid": [0.7]})"), ConfigError);
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "rpu_vs_n"})", ExperimentKind::Mqs2d), ConfigError);
  EXPECT_NO_THROW(parse_config(R"({"schema_version": 1})", ExperimentKind::Mqs2d));
}

TEST(Config, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "infdim_test_config.json";
  {
    std::ofstream(path) << R"({"schema_version": 1, "experiment": "pointloc_depth", "grid": [8], "trials": 2})";
  }
  const auto c = load_config(path);
  EXPECT_EQ(c.kind, ExperimentKind::PointlocDepth);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path), ConfigError);
}

TEST(Runner, SingleTrialSinglePoint) {
  auto c = default_config(ExperimentKind::RpuVsN);
  c.grid = {1};
  c.trials = 1;
  c.query_kinds = {QueryKind::Comparison};
  const auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].total, 1u);
  EXPECT_EQ(rows[0].experiment, "rpu_vs_n:comparison");
}

TEST(Runner, OrderedAndIndependentOfWorkers) {
  for (auto k : all_experiment_kinds()) {
    auto c = default_config(k);
    c.trials = 3;
    if (k == ExperimentKind::RpuVsN || k == ExperimentKind::PointlocDepth || k == ExperimentKind::CoverageCurve) {
      c.grid = {16, 32};
    } else if (k == ExperimentKind::RpuVsD) {
      c.grid = {2, 3};
      c.sample_size = 32;
    } else if (k == ExperimentKind::GEstimate) {
      c.grid = {3, 5};
    } else {
      c.grid = {0.1, 0.05};
    }
    c.fresh_points = 200;
    c.evaluation_samples = 2000;
    c.workers = 1;
    std::vector<ResultRow> streamed;
    const auto serial = run_experiment(c, [&](const ResultRow& r) { streamed.push_back(r); });
    c.workers = 8;
    const auto parallel = run_experiment(c);
    EXPECT_EQ(emit_string(serial), emit_string(parallel)) << to_string(k);
    EXPECT_EQ(streamed, serial);
    ASSERT_EQ(serial.size(), c.query_kinds.size() * c.grid.size() * c.trials);
    for (const auto& r : serial) {
      EXPECT_TRUE(r.failure.empty()) << r.failure;
      EXPECT_EQ(r.labels + r.comparisons, r.total);
      EXPECT_EQ(r.ms, 0.0);
    }
    EXPECT_EQ(reliability_violations(c, serial), 0u);
  }
}

TEST(Runner, SharedSamplesAcrossQueryKinds) {
  auto c = default_config(ExperimentKind::CoverageCurve);
  c.grid = {30};
  c.trials = 2;
  c.fresh_points = 500;
  const auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_GE(rows[2].metric, rows[0].metric);
  EXPECT_GE(rows[3].metric, rows[1].metric);
}

TEST(Runner, GEstimateRowsMatchAnalysisEstimator) {
  auto c = default_config(ExperimentKind::GEstimate);
  c.grid = {4};
  c.trials = 50;
  c.query_kinds = {QueryKind::Label};
  c.classifier = ClassifierFamily::UniformOffset;
  double failures = 0.0;
  for (const auto& r : run_experiment(c)) failures += r.metric;
  const auto g = estimate_avg_inference_dimension(DistributionSpec::uniform_ball(2), 4, 50, QueryKind::Label, c.seed,
                                                  ClassifierFamily::UniformOffset);
  EXPECT_EQ(static_cast<std::size_t>(failures), g.failures);
}

TEST(Runner, ReliabilityViolationsCounted) {
  auto c = default_config(ExperimentKind::RpuVsN);
  std::vector<ResultRow> rows(3);
  rows[1].errors = 2;
  EXPECT_EQ(reliability_violations(c, rows), 1u);
  c = default_config(ExperimentKind::PacErrorCurve);
  EXPECT_EQ(reliability_violations(c, rows), 0u);
}

TEST(Runner, TimingFillsMs) {
  auto c = default_config(ExperimentKind::RpuVsN);
  c.grid = {64};
  c.trials = 2;
  c.timing = true;
  for (const auto& r : run_experiment(c)) EXPECT_GT(r.ms, 0.0);
}

}  // namespace
}  // namespace infdim::harness
