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

#ifndef INFDIM_ORACLE_HPP_
#define INFDIM_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infdim/geometry.hpp"

namespace infdim {

enum class QueryKind { Label, Comparison };

const char* to_string(QueryKind kind);

/// One oracle answer. subject is lift_point(x) for a label query and
/// lift_difference(x, y) for a comparison; answer is never Zero (ties and
/// on-plane points report Positive).
struct QueryRecord {
  QueryKind kind;
  LiftedVector subject;
  Sign answer;
};

struct QueryLedger {
  std::uint64_t label_count = 0;
  std::uint64_t comparison_count = 0;

  std::uint64_t total() const { return label_count + comparison_count; }
  QueryLedger& operator+=(const QueryLedger& other);
  bool operator==(const QueryLedger&) const = default;
};

/// Holds a hidden hyperplane and answers label and comparison queries about
/// it, counting every call. No memoization: repeating a query costs again.
class Oracle {
 public:
  explicit Oracle(Hyperplane hidden);

  QueryRecord label_query(const Point& x);
  QueryRecord comparison_query(const Point& x, const Point& y);

  const QueryLedger& ledger() const { return ledger_; }
  std::size_t dim() const { return hidden_.dim(); }

 private:
  Hyperplane hidden_;
  QueryLedger ledger_;
};

/// Maps Zero to Positive.
Sign oracle_sign(double value);

struct SortResult {
  std::vector<std::size_t> ordering;  // indices into the input, ascending in h
  std::vector<QueryRecord> records;
};

/// Merge sort of points by hidden value using comparison queries only;
/// at most k*ceil(log2 k) comparisons for k points.
SortResult sort_by_value(Oracle& oracle, std::span<const Point> points);

/// Merges a new batch into an existing ascending order: the batch is merge
/// sorted, then merged with `sorted` by Hwang-Lin merging (never more than
/// the |sorted| + |batch| - 1 comparisons of a linear merge). Indices refer to `points`. Comparison
/// records are appended to `records`.
std::vector<std::size_t> merge_insert(Oracle& oracle, std::span<const Point> points,
                                      std::span<const std::size_t> sorted, std::span<const std::size_t> batch,
                                      std::vector<QueryRecord>& records);

}  // namespace infdim

#endif  // INFDIM_ORACLE_HPP_
