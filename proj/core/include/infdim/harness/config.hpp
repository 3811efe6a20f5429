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

#ifndef INFDIM_HARNESS_CONFIG_HPP_
#define INFDIM_HARNESS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infdim/analysis.hpp"
#include "infdim/distributions.hpp"
#include "infdim/oracle.hpp"
#include "infdim/pac.hpp"
#include "infdim/rpu.hpp"

namespace infdim::harness {

inline constexpr int kSchemaVersion = 1;

enum class ExperimentKind { RpuVsN, RpuVsD, PacErrorCurve, PointlocDepth, GEstimate, CoverageCurve, Mqs2d };

const char* to_string(ExperimentKind kind);
/// Throws ConfigError on an unknown name.
ExperimentKind parse_experiment_kind(std::string_view name);
const std::vector<ExperimentKind>& all_experiment_kinds();

enum class DistributionKind { UniformBall, Gaussian };

const char* to_string(DistributionKind kind);

enum class OutputFormat { Csv, Jsonl };

/// Grid semantics by experiment: sample size n (rpu_vs_n, pointloc_depth,
/// g_estimate, coverage_curve), dimension d (rpu_vs_d), or accuracy epsilon
/// (pac_error_curve, mqs2d).
struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  ExperimentKind kind = ExperimentKind::RpuVsN;
  DistributionKind distribution = DistributionKind::UniformBall;
  /// Ambient dimension, unused by rpu_vs_d (grid) and mqs2d (always 2).
  std::size_t dimension = 3;
  /// Fixed sample size for rpu_vs_d.
  std::size_t sample_size = 256;
  std::vector<double> grid;
  std::vector<QueryKind> query_kinds;
  ClassifierFamily classifier = ClassifierFamily::Tangent;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  RpuParams rpu{};
  PacParams pac{};
  Mqs2dParams mqs{};
  std::size_t fresh_points = 10'000;
  /// Monte Carlo draws for measuring PAC error.
  std::size_t evaluation_samples = 100'000;
  std::filesystem::path output;
  OutputFormat format = OutputFormat::Csv;
  /// Fill the ms column with wall-clock time; off keeps output reproducible.
  bool timing = false;

  /// Throws ConfigError.
  void validate() const;
  /// Integral grid values as sizes; throws ConfigError on non-integers.
  std::vector<std::size_t> integer_grid() const;
  /// Distribution of the learner's points in the given dimension.
  DistributionSpec distribution_spec(std::size_t d) const;
  /// True when nonzero errors in a row mean an unreliable label.
  bool reliability_checked() const;
};

/// Desk-scale defaults for an experiment kind.
ExperimentConfig default_config(ExperimentKind kind);

/// Applies a JSON document over default_config of its "experiment" field
/// (or of `expected`, which must agree when both are present). Unknown keys
/// and a missing or unsupported schema_version are rejected with ConfigError.
ExperimentConfig parse_config(std::string_view json_text, std::optional<ExperimentKind> expected = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<ExperimentKind> expected = std::nullopt);

/// Serializes every field that parse_config reads.
std::string dump_config(const ExperimentConfig& config);

}  // namespace infdim::harness

#endif  // INFDIM_HARNESS_CONFIG_HPP_
