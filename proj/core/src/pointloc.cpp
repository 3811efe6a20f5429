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

#include "infdim/pointloc.hpp"

#include <cmath>

#include "infdim/errors.hpp"

namespace infdim {

Arrangement::Arrangement(std::vector<Hyperplane> hyperplanes) : hyperplanes_(std::move(hyperplanes)) {
  detail::require(!hyperplanes_.empty(), "Arrangement: no hyperplanes");
  for (const auto& h : hyperplanes_) detail::require(h.dim() == hyperplanes_.front().dim(), "Arrangement: mixed dimensions");
}

Arrangement sample_arrangement(const DistributionSpec& spec, std::size_t n, Rng& rng) {
  detail::require(spec.dimension() >= 2, "sample_arrangement: coefficient dimension must be >= 2");
  const auto d = static_cast<Eigen::Index>(spec.dimension() - 1);
  std::vector<Hyperplane> hs;
  hs.reserve(n);
  while (hs.size() < n) {
    const Point c = sample(spec, rng);
    if (c.coords().head(d).norm() == 0.0) continue;
    hs.emplace_back(c.coords().head(d), c.coords()[d]);
  }
  return Arrangement(std::move(hs));
}

std::vector<Point> dual_items(const Arrangement& arr) {
  std::vector<Point> items;
  items.reserve(arr.size());
  for (const auto& h : arr.hyperplanes()) items.emplace_back(h.lifted_weight());
  return items;
}

Hyperplane dual_hidden(const Point& x) {
  Eigen::VectorXd w(x.coords().size() + 1);
  w.head(x.coords().size()) = x.coords();
  w[x.coords().size()] = 1.0;
  return Hyperplane(std::move(w), 0.0);
}

std::vector<Eigen::VectorXd> dual_known_rows(std::size_t d) {
  // Lifted dual weight lives in R^{d+2}: (x, 1) scaled, then offset 0.
  const auto n = static_cast<Eigen::Index>(d + 2);
  Eigen::VectorXd offset_up = Eigen::VectorXd::Zero(n);
  offset_up[n - 1] = 1.0;
  Eigen::VectorXd last_normal = Eigen::VectorXd::Zero(n);
  last_normal[n - 2] = 1.0;
  return {offset_up, -offset_up, last_normal};
}

CellSignature locate(const Point& x, const Arrangement& arr, const RpuParams& params, Rng& rng, QueryKind kind) {
  if (x.dim() != arr.dim()) throw ContractViolation("locate: dimension mismatch");
  const auto items = dual_items(arr);
  Oracle oracle(dual_hidden(x));
  RpuParams dual = params;
  const auto known = dual_known_rows(x.dim());
  dual.known_rows.insert(dual.known_rows.end(), known.begin(), known.end());
  RpuOutcome out = perfect_learning(items, kind, dual, oracle, rng);
  CellSignature sig;
  sig.signs = std::move(out.labels);
  sig.ledger = oracle.ledger();
  sig.depth = static_cast<std::size_t>(sig.ledger.total());
  return sig;
}

DepthTrial depth_trial(const DistributionSpec& spec, std::size_t d, std::size_t n, RngSeed seed,
                       const RpuParams& params, QueryKind kind) {
  detail::require(spec.dimension() == d + 1, "depth_trial: coefficient distribution must live in R^{d+1}");
  Rng rng(seed);
  const Arrangement arr = sample_arrangement(spec, n, rng);
  const Point x = sample(DistributionSpec::uniform_ball(d), rng);
  DepthTrial trial{locate(x, arr, params, rng, kind), 0};
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (trial.signature.signs[i] != oracle_sign(evaluate(arr.hyperplanes()[i], x))) ++trial.errors;
  }
  return trial;
}

std::vector<DepthRow> depth_experiment(const DistributionSpec& spec, std::size_t d, const std::vector<std::size_t>& n_grid,
                                       std::size_t trials, std::uint64_t seed, const RpuParams& params) {
  detail::require(trials >= 1, "depth_experiment: trials must be >= 1");
  std::vector<DepthRow> rows;
  for (const std::size_t n : n_grid) {
    DepthRow row;
    row.n = n;
    double sum = 0.0;
    double sum2 = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const DepthTrial trial = depth_trial(spec, d, n, RngSeed{seed, mix_stream(n, t)}, params);
      row.errors += trial.errors;
      const auto depth = static_cast<double>(trial.signature.depth);
      sum += depth;
      sum2 += depth * depth;
    }
    const auto k = static_cast<double>(trials);
    row.mean_depth = sum / k;
    row.std_depth = trials > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / k) / (k - 1.0))) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace infdim
