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

#include "infdim/inference.hpp"

#include <optional>

#include "infdim/errors.hpp"

namespace infdim {
namespace {

// Consistent weights seen so far; any of them witnesses that the version
// space reaches a given side of a point with margin.
class WitnessPool {
 public:
  WitnessPool(std::size_t dim, std::size_t capacity) : dim_(dim), capacity_(capacity) {}

  void add(const Eigen::VectorXd& w) {
    if (weights_.size() < capacity_) {
      weights_.push_back(w);
    } else {
      weights_[next_++ % capacity_] = w;
    }
  }

  // Largest <w, v> over the pool, or nullopt when empty.
  std::optional<double> max_dot(const Eigen::VectorXd& v) const {
    std::optional<double> best;
    for (const auto& w : weights_) {
      const double s = w.dot(v);
      if (!best || s > *best) best = s;
    }
    return best;
  }

  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Eigen::VectorXd> weights_;
};

struct SideResult {
  bool reachable;  // some consistent w gives <w, target> >= margin
};

// Decides whether the version space reaches <w, target> >= margin.
SideResult reach(const ConstraintSet& c, const Eigen::VectorXd& target, const InferenceOptions& options,
                 WitnessPool* pool) {
  if (pool != nullptr) {
    const auto best = pool->max_dot(target);
    if (best && *best >= options.margin) return {true};
  }
  const auto cone = c.matrix();
  const auto sol = lp::solve_margin_program(cone, target, options.solver, options.slack);
  if (sol.upper_bound < options.margin) return {false};
  if (pool != nullptr && sol.lower_bound >= options.margin) pool->add(sol.witness);
  return {true};
}

InferenceVerdict infer_lifted(const ConstraintSet& c, const Eigen::VectorXd& lifted, const InferenceOptions& options,
                              WitnessPool* pool) {
  try {
    if (!reach(c, -lifted, options, pool).reachable) return InferenceVerdict::InferredPositive;
    if (!reach(c, lifted, options, pool).reachable) return InferenceVerdict::InferredNegative;
  } catch (const SolverError&) {
    return InferenceVerdict::Unknown;
  }
  return InferenceVerdict::Unknown;
}

}  // namespace

const char* to_string(InferenceVerdict v) {
  switch (v) {
    case InferenceVerdict::InferredPositive:
      return "inferred+";
    case InferenceVerdict::InferredNegative:
      return "inferred-";
    case InferenceVerdict::Unknown:
      break;
  }
  return "unknown";
}

Sign verdict_sign(InferenceVerdict v) {
  switch (v) {
    case InferenceVerdict::InferredPositive:
      return Sign::Positive;
    case InferenceVerdict::InferredNegative:
      return Sign::Negative;
    case InferenceVerdict::Unknown:
      break;
  }
  throw ContractViolation("verdict_sign: verdict is Unknown");
}

ConstraintSet::ConstraintSet(std::size_t d) : dim_(d) { detail::require(d >= 1, "ConstraintSet: d must be >= 1"); }

void ConstraintSet::push_column(const Eigen::VectorXd& direction) {
  columns_.insert(columns_.end(), direction.data(), direction.data() + direction.size());
}

void ConstraintSet::add(const QueryRecord& record) {
  if (record.subject.base_dim() != dim_) throw ContractViolation("ConstraintSet::add: dimension mismatch");
  const Sign s = record.answer == Sign::Negative ? Sign::Negative : Sign::Positive;
  if (s == Sign::Negative) {
    push_column(-record.subject.coords());
  } else {
    push_column(record.subject.coords());
  }
  if (record.kind == QueryKind::Label) ++label_rows_;
  rows_.push_back(Row{record.subject, s});
}

void ConstraintSet::add_all(std::span<const QueryRecord> records) {
  columns_.reserve(columns_.size() + records.size() * (dim_ + 1));
  for (const auto& r : records) add(r);
}

void ConstraintSet::add_known(const Eigen::VectorXd& direction) {
  if (static_cast<std::size_t>(direction.size()) != dim_ + 1) {
    throw ContractViolation("ConstraintSet::add_known: dimension mismatch");
  }
  push_column(direction);
  ++known_count_;
}

Eigen::Map<const Eigen::MatrixXd> ConstraintSet::matrix() const {
  const auto rows = static_cast<Eigen::Index>(dim_ + 1);
  return {columns_.data(), rows, static_cast<Eigen::Index>(columns_.size()) / rows};
}

ConstraintSet add_record(ConstraintSet c, const QueryRecord& record) {
  c.add(record);
  return c;
}

bool feasible(const ConstraintSet& c, std::span<const Eigen::VectorXd> extra, const InferenceOptions& options) {
  if (extra.empty()) return true;  // w = 0
  Eigen::MatrixXd strict(static_cast<Eigen::Index>(c.dim() + 1), static_cast<Eigen::Index>(extra.size()));
  for (std::size_t j = 0; j < extra.size(); ++j) {
    if (static_cast<std::size_t>(extra[j].size()) != c.dim() + 1) {
      throw ContractViolation("feasible: extra row dimension mismatch");
    }
    strict.col(static_cast<Eigen::Index>(j)) = extra[j];
  }
  const auto sol = lp::solve_margin_program(c.matrix(), strict, options.solver, options.slack);
  return sol.upper_bound >= options.margin;
}

InferenceVerdict infer(const ConstraintSet& c, const Point& z, const InferenceOptions& options) {
  if (z.dim() != c.dim()) throw ContractViolation("infer: dimension mismatch");
  return infer_lifted(c, lift_point(z).coords(), options, nullptr);
}

std::vector<InferenceVerdict> infer_batch(const ConstraintSet& c, std::span<const Point> zs,
                                          const InferenceOptions& options) {
  std::vector<InferenceVerdict> out;
  out.reserve(zs.size());
  WitnessPool pool(c.dim() + 1, 32);
  for (const auto& z : zs) {
    if (z.dim() != c.dim()) throw ContractViolation("infer_batch: dimension mismatch");
    out.push_back(infer_lifted(c, lift_point(z).coords(), options, &pool));
  }
  return out;
}

}  // namespace infdim
