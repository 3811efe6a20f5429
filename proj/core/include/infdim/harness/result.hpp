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

#ifndef INFDIM_HARNESS_RESULT_HPP_
#define INFDIM_HARNESS_RESULT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "infdim/harness/config.hpp"

namespace infdim::harness {

/// One trial. metric is the inferred fraction (rpu), the measured error
/// (pac, mqs2d), the query depth (pointloc), a 0/1 failure indicator
/// (g_estimate) or the fresh-point coverage (coverage_curve).
struct ResultRow {
  std::string experiment;
  std::uint64_t seed = 0;
  double grid = 0.0;
  std::size_t trial = 0;
  std::uint64_t labels = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t total = 0;
  std::uint64_t errors = 0;
  double metric = 0.0;
  double ms = 0.0;
  /// Exception text when the trial aborted; metric is NaN then.
  std::string failure;

  bool operator==(const ResultRow&) const = default;
};

inline constexpr std::string_view kCsvHeader = "experiment,seed,grid,trial,labels,comparisons,total,errors,metric,ms";

/// Six significant digits, "nan" for NaN.
std::string format_number(double value);

std::string csv_line(const ResultRow& row);
std::string jsonl_line(const ResultRow& row);

/// Header line (csv only) followed by one line per row, LF terminated.
void emit(const std::vector<ResultRow>& rows, OutputFormat format, std::ostream& out);
/// Throws std::runtime_error naming the path when it cannot be written.
void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::filesystem::path& path);

/// Inverse of emit for csv. Throws std::runtime_error on malformed input.
std::vector<ResultRow> parse_csv(std::string_view text);

}  // namespace infdim::harness

#endif  // INFDIM_HARNESS_RESULT_HPP_
