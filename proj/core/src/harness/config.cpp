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

#include "infdim/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "infdim/errors.hpp"

namespace infdim::harness {
namespace {

using nlohmann::json;

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::RpuVsN, "rpu_vs_n"},           {ExperimentKind::RpuVsD, "rpu_vs_d"},
    {ExperimentKind::PacErrorCurve, "pac_error_curve"}, {ExperimentKind::PointlocDepth, "pointloc_depth"},
    {ExperimentKind::GEstimate, "g_estimate"},       {ExperimentKind::CoverageCurve, "coverage_curve"},
    {ExperimentKind::Mqs2d, "mqs2d"},
};

[[noreturn]] void fail(const std::string& what) { throw ConfigError("config: " + what); }

void check_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(std::string("bad value for '") + key + "': " + e.what());
  }
}

QueryKind parse_query_kind(const std::string& name) {
  if (name == "label") return QueryKind::Label;
  if (name == "comparison") return QueryKind::Comparison;
  fail("unknown query kind '" + name + "'");
}

ClassifierFamily parse_family(const std::string& name) {
  if (name == "tangent") return ClassifierFamily::Tangent;
  if (name == "uniform_offset") return ClassifierFamily::UniformOffset;
  fail("unknown classifier family '" + name + "'");
}

DistributionKind parse_distribution(const std::string& name) {
  if (name == "uniform_ball") return DistributionKind::UniformBall;
  if (name == "gaussian") return DistributionKind::Gaussian;
  fail("unknown distribution '" + name + "'");
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "jsonl") return OutputFormat::Jsonl;
  fail("unknown format '" + name + "'");
}

const char* labeling_name(ComparisonLabeling l) { return l == ComparisonLabeling::All ? "all" : "binary_search"; }

std::vector<double> powers_of_two(std::size_t lo, std::size_t hi) {
  std::vector<double> g;
  for (std::size_t n = lo; n <= hi; n *= 2) g.push_back(static_cast<double>(n));
  return g;
}

void read_rpu(const json& j, RpuParams& p) {
  check_keys(j, "rpu", {"initial_subsample", "residual_threshold_label", "residual_threshold_comparison",
                        "comparison_labels", "margin", "slack"});
  read(j, "initial_subsample", p.initial_subsample);
  read(j, "residual_threshold_label", p.residual_threshold_label);
  read(j, "residual_threshold_comparison", p.residual_threshold_comparison);
  if (j.contains("comparison_labels")) {
    std::string s;
    read(j, "comparison_labels", s);
    if (s == "all") {
      p.comparison_labels = ComparisonLabeling::All;
    } else if (s == "binary_search") {
      p.comparison_labels = ComparisonLabeling::BinarySearch;
    } else {
      fail("unknown comparison_labels '" + s + "'");
    }
  }
  read(j, "margin", p.inference.margin);
  read(j, "slack", p.inference.slack);
}

void read_pac(const json& j, PacParams& p) {
  check_keys(j, "pac", {"delta", "pool_constant", "median_constant", "bl_error_scale", "band_constant",
                        "threshold_verify_window", "use_exact_isotropizer"});
  read(j, "delta", p.delta);
  read(j, "pool_constant", p.pool_constant);
  read(j, "median_constant", p.median_constant);
  read(j, "bl_error_scale", p.bl_error_scale);
  read(j, "band_constant", p.bl.band_constant);
  read(j, "threshold_verify_window", p.threshold_verify_window);
  read(j, "use_exact_isotropizer", p.use_exact_isotropizer);
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (const auto& k : kKindNames) {
    if (name == k.name) return k.kind;
  }
  fail("unknown experiment '" + std::string(name) + "'");
}

const std::vector<ExperimentKind>& all_experiment_kinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> v;
    for (const auto& k : kKindNames) v.push_back(k.kind);
    return v;
  }();
  return kinds;
}

const char* to_string(DistributionKind kind) {
  return kind == DistributionKind::UniformBall ? "uniform_ball" : "gaussian";
}

void ExperimentConfig::validate() const {
  if (schema_version != kSchemaVersion) fail("unsupported schema_version " + std::to_string(schema_version));
  if (grid.empty()) fail("grid must be nonempty");
  if (trials < 1) fail("trials must be >= 1");
  if (workers < 1) fail("workers must be >= 1");
  if (query_kinds.empty()) fail("query_kinds must be nonempty");
  for (double g : grid) {
    if (!std::isfinite(g) || g <= 0.0) fail("grid values must be positive");
  }
  switch (kind) {
    case ExperimentKind::RpuVsN:
    case ExperimentKind::PointlocDepth:
    case ExperimentKind::CoverageCurve:
      if (dimension < 1) fail("dimension must be >= 1");
      (void)integer_grid();
      break;
    case ExperimentKind::GEstimate:
      if (dimension < 1) fail("dimension must be >= 1");
      for (auto n : integer_grid()) {
        if (n < 2) fail("g_estimate needs n >= 2");
      }
      break;
    case ExperimentKind::RpuVsD:
      if (sample_size < 1) fail("sample_size must be >= 1");
      (void)integer_grid();
      break;
    case ExperimentKind::PacErrorCurve:
    case ExperimentKind::Mqs2d:
      for (double e : grid) {
        if (e >= 0.5) fail("epsilon grid values must lie in (0, 0.5)");
      }
      if (kind == ExperimentKind::PacErrorCurve && dimension < 1) fail("dimension must be >= 1");
      break;
  }
  const auto only = [&](QueryKind k, const char* what) {
    for (auto q : query_kinds) {
      if (q != k) fail(std::string(to_string(kind)) + " supports only " + what + " queries");
    }
  };
  if (kind == ExperimentKind::PacErrorCurve) only(QueryKind::Comparison, "comparison");
  if (kind == ExperimentKind::Mqs2d) only(QueryKind::Label, "label");
  if (kind == ExperimentKind::CoverageCurve && fresh_points < 1) fail("fresh_points must be >= 1");
  if ((kind == ExperimentKind::PacErrorCurve || kind == ExperimentKind::Mqs2d) && evaluation_samples < 1) {
    fail("evaluation_samples must be >= 1");
  }
  try {
    rpu.validate();
    PacParams p = pac;
    p.epsilon = std::min(0.25, grid.front());
    p.validate();
  } catch (const ContractViolation& e) {
    fail(e.what());
  }
}

std::vector<std::size_t> ExperimentConfig::integer_grid() const {
  std::vector<std::size_t> out;
  for (double g : grid) {
    if (g != std::floor(g) || g < 1.0) fail("grid values must be positive integers for " + std::string(to_string(kind)));
    out.push_back(static_cast<std::size_t>(g));
  }
  return out;
}

DistributionSpec ExperimentConfig::distribution_spec(std::size_t d) const {
  return distribution == DistributionKind::UniformBall ? DistributionSpec::uniform_ball(d)
                                                      : DistributionSpec::gaussian(d);
}

bool ExperimentConfig::reliability_checked() const {
  return kind == ExperimentKind::RpuVsN || kind == ExperimentKind::RpuVsD || kind == ExperimentKind::PointlocDepth ||
         kind == ExperimentKind::CoverageCurve;
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  switch (kind) {
    case ExperimentKind::RpuVsN:
      c.grid = powers_of_two(1, 1024);
      c.query_kinds = {QueryKind::Label, QueryKind::Comparison};
      break;
    case ExperimentKind::RpuVsD:
      c.grid = {2, 3, 4, 5, 6, 7, 8};
      c.query_kinds = {QueryKind::Comparison};
      break;
    case ExperimentKind::PacErrorCurve:
      c.distribution = DistributionKind::Gaussian;
      c.grid = {0.05, 0.025, 0.0125};
      c.query_kinds = {QueryKind::Comparison};
      c.classifier = ClassifierFamily::UniformOffset;
      c.trials = 100;
      break;
    case ExperimentKind::PointlocDepth:
      c.distribution = DistributionKind::Gaussian;
      c.grid = powers_of_two(64, 1024);
      c.query_kinds = {QueryKind::Comparison};
      break;
    case ExperimentKind::GEstimate:
      c.dimension = 2;
      c.grid = {8, 12, 16, 20};
      c.query_kinds = {QueryKind::Comparison};
      c.trials = 2000;
      break;
    case ExperimentKind::CoverageCurve:
      c.grid = {50, 100, 200, 400};
      c.query_kinds = {QueryKind::Label, QueryKind::Comparison};
      c.trials = 20;
      break;
    case ExperimentKind::Mqs2d:
      c.dimension = 2;
      c.grid = {0.04, 0.005};
      c.query_kinds = {QueryKind::Label};
      c.classifier = ClassifierFamily::UniformOffset;
      c.trials = 100;
      break;
  }
  return c;
}

ExperimentConfig parse_config(std::string_view json_text, std::optional<ExperimentKind> expected) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  check_keys(j, "top level",
             {"schema_version", "experiment", "distribution", "dimension", "sample_size", "grid", "query_kinds",
              "classifier", "trials", "seed", "workers", "rpu", "pac", "mqs", "fresh_points", "evaluation_samples",
              "output", "format", "timing"});
  if (!j.contains("schema_version")) fail("missing schema_version");
  int version = 0;
  read(j, "schema_version", version);
  if (version != kSchemaVersion) fail("unsupported schema_version " + std::to_string(version));

  std::optional<ExperimentKind> kind = expected;
  if (j.contains("experiment")) {
    std::string name;
    read(j, "experiment", name);
    const ExperimentKind k = parse_experiment_kind(name);
    if (expected && *expected != k) {
      fail("file describes '" + name + "' but '" + to_string(*expected) + "' was requested");
    }
    kind = k;
  }
  if (!kind) fail("missing experiment");

  ExperimentConfig c = default_config(*kind);
  c.schema_version = version;
  if (j.contains("distribution")) {
    std::string s;
    read(j, "distribution", s);
    c.distribution = parse_distribution(s);
  }
  read(j, "dimension", c.dimension);
  read(j, "sample_size", c.sample_size);
  read(j, "grid", c.grid);
  if (j.contains("query_kinds")) {
    std::vector<std::string> names;
    read(j, "query_kinds", names);
    c.query_kinds.clear();
    for (const auto& n : names) c.query_kinds.push_back(parse_query_kind(n));
  }
  if (j.contains("classifier")) {
    std::string s;
    read(j, "classifier", s);
    c.classifier = parse_family(s);
  }
  read(j, "trials", c.trials);
  read(j, "seed", c.seed);
  read(j, "workers", c.workers);
  if (j.contains("rpu")) read_rpu(j.at("rpu"), c.rpu);
  if (j.contains("pac")) read_pac(j.at("pac"), c.pac);
  if (j.contains("mqs")) {
    check_keys(j.at("mqs"), "mqs", {"vertex_constant"});
    read(j.at("mqs"), "vertex_constant", c.mqs.vertex_constant);
  }
  read(j, "fresh_points", c.fresh_points);
  read(j, "evaluation_samples", c.evaluation_samples);
  if (j.contains("output")) {
    std::string s;
    read(j, "output", s);
    c.output = s;
  }
  if (j.contains("format")) {
    std::string s;
    read(j, "format", s);
    c.format = parse_format(s);
  }
  read(j, "timing", c.timing);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<ExperimentKind> expected) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), expected);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string dump_config(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["experiment"] = to_string(c.kind);
  j["distribution"] = to_string(c.distribution);
  j["dimension"] = c.dimension;
  j["sample_size"] = c.sample_size;
  j["grid"] = c.grid;
  std::vector<std::string> kinds;
  for (auto k : c.query_kinds) kinds.emplace_back(k == QueryKind::Label ? "label" : "comparison");
  j["query_kinds"] = kinds;
  j["classifier"] = to_string(c.classifier);
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["rpu"] = {{"initial_subsample", c.rpu.initial_subsample},
              {"residual_threshold_label", c.rpu.residual_threshold_label},
              {"residual_threshold_comparison", c.rpu.residual_threshold_comparison},
              {"comparison_labels", labeling_name(c.rpu.comparison_labels)},
              {"margin", c.rpu.inference.margin},
              {"slack", c.rpu.inference.slack}};
  j["pac"] = {{"delta", c.pac.delta},
              {"pool_constant", c.pac.pool_constant},
              {"median_constant", c.pac.median_constant},
              {"bl_error_scale", c.pac.bl_error_scale},
              {"band_constant", c.pac.bl.band_constant},
              {"threshold_verify_window", c.pac.threshold_verify_window},
              {"use_exact_isotropizer", c.pac.use_exact_isotropizer}};
  j["mqs"] = {{"vertex_constant", c.mqs.vertex_constant}};
  j["fresh_points"] = c.fresh_points;
  j["evaluation_samples"] = c.evaluation_samples;
  if (!c.output.empty()) j["output"] = c.output.string();
  j["format"] = c.format == OutputFormat::Csv ? "csv" : "jsonl";
  j["timing"] = c.timing;
  return j.dump(2) + "\n";
}

}  // namespace infdim::harness
