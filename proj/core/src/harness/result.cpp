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

#include "infdim/harness/result.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace infdim::harness {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
T parse_int(std::string_view s, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad integer '" + std::string(s) + "'");
  }
  return value;
}

double parse_real(std::string_view s, std::size_t line_no) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string csv_line(const ResultRow& r) {
  std::string s = r.experiment;
  s += ',' + std::to_string(r.seed);
  s += ',' + format_number(r.grid);
  s += ',' + std::to_string(r.trial);
  s += ',' + std::to_string(r.labels);
  s += ',' + std::to_string(r.comparisons);
  s += ',' + std::to_string(r.total);
  s += ',' + std::to_string(r.errors);
  s += ',' + format_number(r.metric);
  s += ',' + format_number(r.ms);
  return s;
}

std::string jsonl_line(const ResultRow& r) {
  auto number = [](double v) { return std::isnan(v) ? std::string("null") : format_number(v); };
  std::string s = "{\"experiment\":" + nlohmann::json(r.experiment).dump();
  s += ",\"seed\":" + std::to_string(r.seed);
  s += ",\"grid\":" + number(r.grid);
  s += ",\"trial\":" + std::to_string(r.trial);
  s += ",\"labels\":" + std::to_string(r.labels);
  s += ",\"comparisons\":" + std::to_string(r.comparisons);
  s += ",\"total\":" + std::to_string(r.total);
  s += ",\"errors\":" + std::to_string(r.errors);
  s += ",\"metric\":" + number(r.metric);
  s += ",\"ms\":" + number(r.ms);
  if (!r.failure.empty()) s += ",\"failure\":" + nlohmann::json(r.failure).dump();
  s += '}';
  return s;
}

void emit(const std::vector<ResultRow>& rows, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Csv) out << kCsvHeader << '\n';
  for (const auto& r : rows) out << (format == OutputFormat::Csv ? csv_line(r) : jsonl_line(r)) << '\n';
}

void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emit(rows, format, out);
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

std::vector<ResultRow> parse_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!header_seen) {
      if (line != kCsvHeader) throw std::runtime_error("csv line 1: unexpected header");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 10) throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 10 fields");
    ResultRow r;
    r.experiment = std::string(f[0]);
    r.seed = parse_int<std::uint64_t>(f[1], line_no);
    r.grid = parse_real(f[2], line_no);
    r.trial = parse_int<std::size_t>(f[3], line_no);
    r.labels = parse_int<std::uint64_t>(f[4], line_no);
    r.comparisons = parse_int<std::uint64_t>(f[5], line_no);
    r.total = parse_int<std::uint64_t>(f[6], line_no);
    r.errors = parse_int<std::uint64_t>(f[7], line_no);
    r.metric = parse_real(f[8], line_no);
    r.ms = parse_real(f[9], line_no);
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw std::runtime_error("csv: missing header");
  return rows;
}

}  // namespace infdim::harness
