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

#ifndef INFDIM_POINTLOC_HPP_
#define INFDIM_POINTLOC_HPP_

#include <cstddef>
#include <vector>

#include "infdim/distributions.hpp"
#include "infdim/geometry.hpp"
#include "infdim/oracle.hpp"
#include "infdim/rng.hpp"
#include "infdim/rpu.hpp"

namespace infdim {

class Arrangement {
 public:
  explicit Arrangement(std::vector<Hyperplane> hyperplanes);

  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  std::size_t size() const { return hyperplanes_.size(); }
  std::size_t dim() const { return hyperplanes_.front().dim(); }

 private:
  std::vector<Hyperplane> hyperplanes_;
};

/// n hyperplanes whose (normal, offset) coefficients are i.i.d. draws from
/// spec in R^{d+1}, canonicalized.
Arrangement sample_arrangement(const DistributionSpec& spec, std::size_t n, Rng& rng);

struct CellSignature {
  std::vector<Sign> signs;  // sign(h_i(x)), Zero reported as Positive
  std::size_t depth = 0;    // label + comparison queries spent
  QueryLedger ledger;
};

/// Dual items: h_i = <v_i, .> + b_i becomes the point (v_i, b_i) of R^{d+1}.
std::vector<Point> dual_items(const Arrangement& arr);

/// The hidden homogeneous hyperplane of the dual problem, weight (x, 1).
Hyperplane dual_hidden(const Point& x);

/// Side rows encoding what the dual learner knows about its hidden weight:
/// zero offset, and a positive last normal coordinate.
std::vector<Eigen::VectorXd> dual_known_rows(std::size_t d);

/// Locates x in the arrangement by reliable learning of the dual items'
/// labels with label and comparison queries.
CellSignature locate(const Point& x, const Arrangement& arr, const RpuParams& params, Rng& rng,
                     QueryKind kind = QueryKind::Comparison);

struct DepthTrial {
  CellSignature signature;
  std::size_t errors = 0;  // sign mismatches against direct evaluation
};

/// One seeded trial: a fresh arrangement of n hyperplanes with coefficients
/// from spec (dimension d + 1) and a query point from the unit ball.
DepthTrial depth_trial(const DistributionSpec& spec, std::size_t d, std::size_t n, RngSeed seed,
                       const RpuParams& params = {}, QueryKind kind = QueryKind::Comparison);

struct DepthRow {
  std::size_t n = 0;
  double mean_depth = 0.0;
  double std_depth = 0.0;
  std::size_t errors = 0;  // sign mismatches against direct evaluation
};

/// depth_trial over an n grid; trial t at size n uses stream mix_stream(n, t).
std::vector<DepthRow> depth_experiment(const DistributionSpec& spec, std::size_t d, const std::vector<std::size_t>& n_grid,
                                       std::size_t trials, std::uint64_t seed, const RpuParams& params = {});

}  // namespace infdim

#endif  // INFDIM_POINTLOC_HPP_
