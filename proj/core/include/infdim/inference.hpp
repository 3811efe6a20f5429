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

#ifndef INFDIM_INFERENCE_HPP_
#define INFDIM_INFERENCE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "infdim/geometry.hpp"
#include "infdim/lp.hpp"
#include "infdim/oracle.hpp"

namespace infdim {

enum class InferenceVerdict { InferredPositive, InferredNegative, Unknown };

const char* to_string(InferenceVerdict v);
/// Positive/Negative for a definite verdict; throws on Unknown.
Sign verdict_sign(InferenceVerdict v);

struct InferenceOptions {
  /// Margin the opposite label must reach for a point to count as
  /// undetermined: z is inferred positive iff no consistent w in the unit
  /// box has <w, -lift(z)> >= margin.
  double margin = 1e-7;
  /// Slack allowed when checking a witness against the cone rows.
  double slack = 1e-9;
  lp::SolverOptions solver{};
};

/// The version space of the lifted weight w = (v, b) as a polyhedral cone
/// { w : <w, direction> >= 0 for every row }. Rows come from query records
/// (the subject, negated when the answer was Negative); known rows encode
/// side information that the hidden weight is guaranteed to satisfy.
class ConstraintSet {
 public:
  struct Row {
    LiftedVector subject;
    Sign required_sign;  // sign the hidden weight has against subject
  };

  /// Constraints over weights for points of R^d (rows live in R^{d+1}).
  explicit ConstraintSet(std::size_t d);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  std::size_t known_size() const { return known_count_; }
  const std::vector<Row>& rows() const { return rows_; }
  bool has_label_rows() const { return label_rows_ > 0; }

  void add(const QueryRecord& record);
  void add_all(std::span<const QueryRecord> records);
  /// Adds a prior row <w, direction> >= 0 that is not backed by a query.
  void add_known(const Eigen::VectorXd& direction);

  /// (d+1) x (rows + known) matrix of signed directions.
  Eigen::Map<const Eigen::MatrixXd> matrix() const;

 private:
  void push_column(const Eigen::VectorXd& direction);

  std::size_t dim_;
  std::vector<Row> rows_;
  std::size_t known_count_ = 0;
  std::size_t label_rows_ = 0;
  std::vector<double> columns_;
};

/// Value form of ConstraintSet::add.
ConstraintSet add_record(ConstraintSet c, const QueryRecord& record);

/// Whether some w with ||w||_inf <= 1 satisfies every row of c and
/// <w, e> >= options.margin for every e in extra. Throws SolverError when the
/// LP kernel fails.
bool feasible(const ConstraintSet& c, std::span<const Eigen::VectorXd> extra, const InferenceOptions& options = {});

/// Whether the answers in c force the label of z. Solver failures yield
/// Unknown. When both labels are forced (z on every consistent boundary)
/// the Zero-to-Positive convention gives InferredPositive.
InferenceVerdict infer(const ConstraintSet& c, const Point& z, const InferenceOptions& options = {});

/// Pointwise infer over zs. Consistent weights found along the way are
/// reused to settle later points as Unknown without a fresh LP.
std::vector<InferenceVerdict> infer_batch(const ConstraintSet& c, std::span<const Point> zs,
                                          const InferenceOptions& options = {});

}  // namespace infdim

#endif  // INFDIM_INFERENCE_HPP_
