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

#include "infdim/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "infdim/errors.hpp"

namespace infdim::lp {
namespace {

// Column layout of the dual standard form: [cone | strict | p | q], where
// p - q absorbs the residual cone*y + strict*z so that the objective
// sum(p) + sum(q) is its l1 norm. Rows 0..dim-1 are the residual equations,
// row dim is sum(z) = 1.
class DualProgram {
 public:
  DualProgram(Eigen::Ref<const Eigen::MatrixXd> cone, Eigen::Ref<const Eigen::MatrixXd> strict)
      : dim_(strict.rows()), n_cone_(cone.cols()), n_strict_(strict.cols()), cone_(cone), strict_(strict) {
    for (Eigen::Index j = 0; j < n_cone_; ++j) {
      const double n = cone_.col(j).norm();
      if (n > 0.0) cone_.col(j) /= n;
    }
  }

  Eigen::Index rows() const { return dim_ + 1; }
  Eigen::Index cols() const { return n_cone_ + n_strict_ + 2 * dim_; }
  Eigen::Index p_index(Eigen::Index i) const { return n_cone_ + n_strict_ + i; }
  Eigen::Index q_index(Eigen::Index i) const { return n_cone_ + n_strict_ + dim_ + i; }

  double cost(Eigen::Index j) const { return j >= n_cone_ + n_strict_ ? 1.0 : 0.0; }

  Eigen::VectorXd column(Eigen::Index j) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(rows());
    if (j < n_cone_) {
      c.head(dim_) = cone_.col(j);
    } else if (j < n_cone_ + n_strict_) {
      c.head(dim_) = strict_.col(j - n_cone_);
      c[dim_] = 1.0;
    } else if (j < n_cone_ + n_strict_ + dim_) {
      c[j - n_cone_ - n_strict_] = -1.0;
    } else {
      c[j - n_cone_ - n_strict_ - dim_] = 1.0;
    }
    return c;
  }

  // Reduced costs f_j - pi^T G_j for every column.
  Eigen::VectorXd reduced_costs(const Eigen::VectorXd& pi) const {
    Eigen::VectorXd d(cols());
    const auto head = pi.head(dim_);
    if (n_cone_ > 0) d.head(n_cone_).noalias() = -(cone_.transpose() * head);
    d.segment(n_cone_, n_strict_).noalias() = -(strict_.transpose() * head);
    d.segment(n_cone_, n_strict_).array() -= pi[dim_];
    d.segment(n_cone_ + n_strict_, dim_) = head.array() + 1.0;
    d.segment(n_cone_ + n_strict_ + dim_, dim_) = 1.0 - head.array();
    return d;
  }

  Eigen::Index dim_;
  Eigen::Index n_cone_;
  Eigen::Index n_strict_;
  Eigen::MatrixXd cone_;
  Eigen::Ref<const Eigen::MatrixXd> strict_;
};

}  // namespace

MarginSolution solve_margin_program(Eigen::Ref<const Eigen::MatrixXd> cone, Eigen::Ref<const Eigen::MatrixXd> strict,
                                    const SolverOptions& options, double cone_slack) {
  if (strict.cols() == 0) throw ContractViolation("solve_margin_program: no strict rows");
  if (cone.cols() > 0 && cone.rows() != strict.rows()) {
    throw ContractViolation("solve_margin_program: row dimension mismatch");
  }
  const DualProgram prog(cone, strict);
  const Eigen::Index R = prog.rows();
  const Eigen::Index D = prog.dim_;
  const Eigen::Index n = prog.cols();

  // Start from z_0 = 1 with p/q absorbing the first strict column.
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(R));
  std::vector<char> in_basis(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < D; ++i) {
    basis[static_cast<std::size_t>(i)] = strict(i, 0) >= 0.0 ? prog.p_index(i) : prog.q_index(i);
  }
  basis[static_cast<std::size_t>(D)] = prog.n_cone_;
  for (auto j : basis) in_basis[static_cast<std::size_t>(j)] = 1;

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(R);
  rhs[D] = 1.0;

  const std::size_t cap = options.iteration_factor * static_cast<std::size_t>(n + R);
  std::size_t degenerate_run = 0;
  bool bland = false;
  std::size_t iter = 0;
  Eigen::MatrixXd B(R, R);
  Eigen::MatrixXd Binv(R, R);
  Eigen::VectorXd xB(R);
  Eigen::VectorXd pi(R);
  Eigen::VectorXd fB(R);

  for (;; ++iter) {
    if (iter > cap) throw SolverError("solve_margin_program: iteration cap reached");
    for (Eigen::Index k = 0; k < R; ++k) {
      B.col(k) = prog.column(basis[static_cast<std::size_t>(k)]);
      fB[k] = prog.cost(basis[static_cast<std::size_t>(k)]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) throw SolverError("solve_margin_program: singular basis");
    Binv = lu.inverse();
    xB.noalias() = Binv * rhs;
    pi.noalias() = Binv.transpose() * fB;

    const Eigen::VectorXd d = prog.reduced_costs(pi);
    Eigen::Index entering = -1;
    double best = -options.cost_tolerance;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (in_basis[static_cast<std::size_t>(j)]) continue;
      if (d[j] < best) {
        entering = j;
        if (bland) break;
        best = d[j];
      }
    }
    if (entering < 0) break;

    const Eigen::VectorXd dir = Binv * prog.column(entering);
    Eigen::Index leaving = -1;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < R; ++k) {
      if (dir[k] <= options.pivot_tolerance) continue;
      const double ratio = std::max(xB[k], 0.0) / dir[k];
      const bool tie = leaving >= 0 && std::abs(ratio - min_ratio) <= 1e-13;
      if (ratio < min_ratio - 1e-13 || leaving < 0) {
        leaving = k;
        min_ratio = ratio;
      } else if (tie) {
        const auto cur = basis[static_cast<std::size_t>(leaving)];
        const auto cand = basis[static_cast<std::size_t>(k)];
        if (bland ? cand < cur : dir[k] > dir[leaving]) leaving = k;
      }
    }
    if (leaving < 0) throw SolverError("solve_margin_program: unbounded dual (numerical failure)");

    degenerate_run = min_ratio <= 1e-14 ? degenerate_run + 1 : 0;
    if (degenerate_run >= options.degenerate_switch) bland = true;

    in_basis[static_cast<std::size_t>(basis[static_cast<std::size_t>(leaving)])] = 0;
    basis[static_cast<std::size_t>(leaving)] = entering;
    in_basis[static_cast<std::size_t>(entering)] = 1;
  }

  MarginSolution sol;
  sol.iterations = iter;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(prog.n_cone_);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(prog.n_strict_);
  for (Eigen::Index k = 0; k < R; ++k) {
    const auto j = basis[static_cast<std::size_t>(k)];
    const double v = std::max(xB[k], 0.0);
    if (j < prog.n_cone_) {
      y[j] = v;
    } else if (j < prog.n_cone_ + prog.n_strict_) {
      z[j - prog.n_cone_] = v;
    }
  }
  const double zsum = z.sum();
  if (!(zsum > 0.0)) throw SolverError("solve_margin_program: lost the strict multiplier normalization");
  z /= zsum;
  y /= zsum;
  Eigen::VectorXd residual = strict * z;
  if (prog.n_cone_ > 0) residual.noalias() += prog.cone_ * y;
  sol.upper_bound = residual.lpNorm<1>();

  // Report multipliers against the caller's (unnormalized) cone columns.
  sol.cone_multipliers = y;
  for (Eigen::Index j = 0; j < prog.n_cone_; ++j) {
    const double norm = cone.col(j).norm();
    if (norm > 0.0) sol.cone_multipliers[j] = y[j] / norm;
  }
  sol.strict_multipliers = z;

  sol.witness = (-pi.head(D)).cwiseMax(-1.0).cwiseMin(1.0);
  bool cone_ok = true;
  if (prog.n_cone_ > 0) cone_ok = (prog.cone_.transpose() * sol.witness).minCoeff() >= -cone_slack;
  sol.lower_bound = cone_ok ? (strict.transpose() * sol.witness).minCoeff() : -std::numeric_limits<double>::infinity();
  return sol;
}

}  // namespace infdim::lp
