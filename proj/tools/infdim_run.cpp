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

// Experiment driver: one subcommand per experiment kind.
//
//   infdim_run rpu_vs_n --trials 50 --workers 8 --out rpu.csv
//   infdim_run pointloc_depth --config pointloc.json --format jsonl
//
// Exit status: 0 success, 1 configuration or I/O error, 2 reliability
// violation (an rpu, pointloc or coverage row reported a wrong label).

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "infdim/errors.hpp"
#include "infdim/harness/config.hpp"
#include "infdim/harness/result.hpp"
#include "infdim/harness/runner.hpp"

namespace {

namespace ih = infdim::harness;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitReliability = 2;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> out;
  std::optional<std::size_t> workers;
  std::optional<std::string> format;
  bool timing = false;
  bool dump_config = false;
};

ih::ExperimentConfig resolve(ih::ExperimentKind kind, const Overrides& o) {
  ih::ExperimentConfig c = o.config.empty() ? ih::default_config(kind) : ih::load_config(o.config, kind);
  if (o.seed) c.seed = *o.seed;
  if (o.trials) c.trials = *o.trials;
  if (o.out) c.output = *o.out;
  if (o.workers) c.workers = *o.workers;
  if (o.format) c.format = *o.format == "jsonl" ? ih::OutputFormat::Jsonl : ih::OutputFormat::Csv;
  if (o.timing) c.timing = true;
  c.validate();
  return c;
}

int run(const ih::ExperimentConfig& config) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!config.output.empty()) {
    file.open(config.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      std::cerr << "error: cannot open " << config.output.string() << " for writing\n";
      return kExitConfig;
    }
    out = &file;
  }
  const bool csv = config.format == ih::OutputFormat::Csv;
  if (csv) *out << ih::kCsvHeader << '\n';
  const auto rows = ih::run_experiment(config, [&](const ih::ResultRow& row) {
    *out << (csv ? ih::csv_line(row) : ih::jsonl_line(row)) << '\n';
  });
  out->flush();
  if (!*out) {
    std::cerr << "error: write to " << (config.output.empty() ? "stdout" : config.output.string()) << " failed\n";
    return kExitConfig;
  }

  std::size_t failed = 0;
  for (const auto& row : rows) {
    if (row.failure.empty()) continue;
    if (failed++ < 5) std::cerr << "warning: " << row.experiment << " grid " << row.grid << " trial " << row.trial
                                << " aborted: " << row.failure << '\n';
  }
  if (failed > 0) std::cerr << "warning: " << failed << " trial(s) aborted\n";

  const std::size_t violations = ih::reliability_violations(config, rows);
  if (violations > 0) {
    std::cerr << "reliability violation: " << violations << " row(s) with wrong labels\n";
    return kExitReliability;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active learning with label and comparison queries: experiment runner"};
  app.require_subcommand(1);
  Overrides o;
  std::map<CLI::App*, ih::ExperimentKind> subcommands;
  for (const auto kind : ih::all_experiment_kinds()) {
    auto* sub = app.add_subcommand(ih::to_string(kind), std::string("run the ") + ih::to_string(kind) + " experiment");
    sub->add_option("--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--trials", o.trials, "trials per grid value");
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--workers", o.workers, "worker threads");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_flag("--timing", o.timing, "fill the ms column with wall-clock time");
    sub->add_flag("--dump-config", o.dump_config, "print the resolved configuration and exit");
    subcommands[sub] = kind;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const ih::ExperimentKind kind = subcommands.at(app.get_subcommands().front());
  try {
    const ih::ExperimentConfig config = resolve(kind, o);
    if (o.dump_config) {
      std::cout << ih::dump_config(config);
      return kExitOk;
    }
    return run(config);
  } catch (const infdim::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
