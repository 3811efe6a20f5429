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

#ifndef INFDIM_LP_HPP_
#define INFDIM_LP_HPP_

#include <cstddef>

#include <Eigen/Dense>

namespace infdim::lp {

struct SolverOptions {
  double pivot_tolerance = 1e-11;
  double cost_tolerance = 1e-11;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_switch = 50;
  /// Iteration cap, scaled by problem size: cap = factor * (columns + rows).
  std::size_t iteration_factor = 20;
};

/// Solution of the margin program
///
///   maximize t  subject to  <w, a> >= 0  for every column a of cone,
///                           <w, e> >= t  for every column e of strict,
///                           ||w||_inf <= 1.
///
/// The program is solved as its dual,
///
///   minimize || cone y + strict z ||_1  over y >= 0, z >= 0, sum(z) = 1,
///
/// which has only dim+1 equality rows. upper_bound is the dual objective
/// recomputed from the clipped multipliers, so it is a certified upper bound
/// on the optimal t. witness is the primal w read from the simplex
/// multipliers and lower_bound the margin it certifiably achieves (or
/// -infinity when it violates a cone row by more than the slack).
struct MarginSolution {
  double upper_bound = 0.0;
  double lower_bound = 0.0;
  Eigen::VectorXd witness;
  Eigen::VectorXd cone_multipliers;
  Eigen::VectorXd strict_multipliers;
  std::size_t iterations = 0;
};

/// Throws SolverError on iteration cap or a singular basis; throws
/// ContractViolation when strict is empty or the row dimensions disagree.
MarginSolution solve_margin_program(Eigen::Ref<const Eigen::MatrixXd> cone, Eigen::Ref<const Eigen::MatrixXd> strict,
                                    const SolverOptions& options = {}, double cone_slack = 1e-9);

}  // namespace infdim::lp

#endif  // INFDIM_LP_HPP_
