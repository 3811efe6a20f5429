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

#include "infdim/oracle.hpp"

#include <algorithm>

#include "infdim/errors.hpp"

namespace infdim {
namespace {

// Merges two ascending runs; on a tie the right element goes first.
std::vector<std::size_t> merge_runs(Oracle& oracle, std::span<const Point> points, std::span<const std::size_t> left,
                                    std::span<const std::size_t> right, std::vector<QueryRecord>& records) {
  std::vector<std::size_t> out;
  out.reserve(left.size() + right.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < left.size() && j < right.size()) {
    QueryRecord r = oracle.comparison_query(points[left[i]], points[right[j]]);
    const bool left_smaller = r.answer == Sign::Negative;
    records.push_back(std::move(r));
    if (left_smaller) {
      out.push_back(left[i++]);
    } else {
      out.push_back(right[j++]);
    }
  }
  out.insert(out.end(), left.begin() + static_cast<std::ptrdiff_t>(i), left.end());
  out.insert(out.end(), right.begin() + static_cast<std::ptrdiff_t>(j), right.end());
  return out;
}

// Hwang-Lin merging of two ascending runs: when one run is much longer,
// blocks of 2^t elements of the longer run are skipped with a single
// comparison and the remaining position is found by binary search.
std::vector<std::size_t> hwang_lin_merge(Oracle& oracle, std::span<const Point> points,
                                         std::span<const std::size_t> a, std::span<const std::size_t> b,
                                         std::vector<QueryRecord>& records) {
  // less(x, y): h(x) < h(y) according to the oracle.
  auto less = [&](std::size_t x, std::size_t y) {
    QueryRecord r = oracle.comparison_query(points[x], points[y]);
    const bool smaller = r.answer == Sign::Negative;
    records.push_back(std::move(r));
    return smaller;
  };
  std::vector<std::size_t> tail;  // built from the largest element down
  tail.reserve(a.size() + b.size());
  std::size_t m = a.size();
  std::size_t n = b.size();
  while (m > 0 && n > 0) {
    const bool a_longer = m >= n;
    std::span<const std::size_t> longer = a_longer ? a : b;
    std::span<const std::size_t> shorter = a_longer ? b : a;
    std::size_t& lm = a_longer ? m : n;
    std::size_t& sn = a_longer ? n : m;
    std::size_t t = 0;
    while ((std::size_t{2} << t) * sn <= lm) ++t;
    const std::size_t block = std::size_t{1} << t;
    const std::size_t probe = lm - block;
    const std::size_t top = shorter[sn - 1];
    if (less(top, longer[probe])) {
      for (std::size_t k = lm; k > probe; --k) tail.push_back(longer[k - 1]);
      lm = probe;
      continue;
    }
    // top >= longer[probe]: its slot lies in (probe, lm].
    std::size_t lo = probe + 1;
    std::size_t hi = lm;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (less(top, longer[mid])) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    for (std::size_t k = lm; k > lo; --k) tail.push_back(longer[k - 1]);
    tail.push_back(top);
    lm = lo;
    --sn;
  }
  for (std::size_t k = m; k > 0; --k) tail.push_back(a[k - 1]);
  for (std::size_t k = n; k > 0; --k) tail.push_back(b[k - 1]);
  return {tail.rbegin(), tail.rend()};
}

std::vector<std::size_t> merge_sort(Oracle& oracle, std::span<const Point> points, std::span<const std::size_t> idx,
                                    std::vector<QueryRecord>& records) {
  if (idx.size() <= 1) return {idx.begin(), idx.end()};
  const std::size_t half = idx.size() / 2;
  auto left = merge_sort(oracle, points, idx.first(half), records);
  auto right = merge_sort(oracle, points, idx.subspan(half), records);
  return merge_runs(oracle, points, left, right, records);
}

}  // namespace

const char* to_string(QueryKind kind) { return kind == QueryKind::Label ? "label" : "comparison"; }

QueryLedger& QueryLedger::operator+=(const QueryLedger& other) {
  label_count += other.label_count;
  comparison_count += other.comparison_count;
  return *this;
}

Sign oracle_sign(double value) {
  const Sign s = sign_of(value);
  return s == Sign::Zero ? Sign::Positive : s;
}

Oracle::Oracle(Hyperplane hidden) : hidden_(std::move(hidden)) {}

QueryRecord Oracle::label_query(const Point& x) {
  if (x.dim() != hidden_.dim()) throw ContractViolation("label_query: dimension mismatch");
  ++ledger_.label_count;
  return QueryRecord{QueryKind::Label, lift_point(x), oracle_sign(evaluate(hidden_, x))};
}

QueryRecord Oracle::comparison_query(const Point& x, const Point& y) {
  if (x.dim() != hidden_.dim() || y.dim() != hidden_.dim()) {
    throw ContractViolation("comparison_query: dimension mismatch");
  }
  ++ledger_.comparison_count;
  // <v, x - y> rather than h(x) - h(y) so that the answer is exactly the
  // label of the lifted difference under the homogenized weight.
  const double delta = hidden_.normal().dot(x.coords() - y.coords());
  return QueryRecord{QueryKind::Comparison, lift_difference(x, y), oracle_sign(delta)};
}

SortResult sort_by_value(Oracle& oracle, std::span<const Point> points) {
  detail::require(!points.empty(), "sort_by_value: empty input");
  std::vector<std::size_t> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  SortResult result;
  result.ordering = merge_sort(oracle, points, idx, result.records);
  return result;
}

std::vector<std::size_t> merge_insert(Oracle& oracle, std::span<const Point> points,
                                      std::span<const std::size_t> sorted, std::span<const std::size_t> batch,
                                      std::vector<QueryRecord>& records) {
  auto sorted_batch = merge_sort(oracle, points, batch, records);
  return hwang_lin_merge(oracle, points, sorted, sorted_batch, records);
}

}  // namespace infdim
