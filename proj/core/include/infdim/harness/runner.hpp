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

#ifndef INFDIM_HARNESS_RUNNER_HPP_
#define INFDIM_HARNESS_RUNNER_HPP_

#include <functional>
#include <vector>

#include "infdim/harness/config.hpp"
#include "infdim/harness/result.hpp"

namespace infdim::harness {

/// Receives rows in final order as soon as every earlier row is done.
using RowSink = std::function<void(const ResultRow&)>;

/// Runs the (query kind x grid x trial) matrix on config.workers threads.
/// Trial t at grid value g draws from stream mix_stream(key(g), t) of the
/// seed, where key(g) is g itself for integral grids and its bit pattern
/// otherwise; label and comparison runs therefore share samples. Rows come
/// back ordered by (query kind, grid, trial) whatever the worker count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, const RowSink& sink = {});

/// Rows whose errors field breaks reliability for their experiment.
std::size_t reliability_violations(const ExperimentConfig& config, const std::vector<ResultRow>& rows);

}  // namespace infdim::harness

#endif  // INFDIM_HARNESS_RUNNER_HPP_
