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

#ifndef INFDIM_TESTS_WITNESS_HPP_
#define INFDIM_TESTS_WITNESS_HPP_

#include <span>

#include <Eigen/Dense>

#include "infdim/geometry.hpp"
#include "infdim/inference.hpp"
#include "infdim/oracle.hpp"
#include "infdim/rng.hpp"

namespace infdim::testing {

/// Outcome of a randomized search for weights consistent with a record set.
struct WitnessSearch {
  std::size_t consistent = 0;
  bool labels_positive = false;  // some consistent w puts z on the positive side
  bool labels_negative = false;
};

/// Draws w uniformly from [-1, 1]^{d+1} and keeps those that reproduce every
/// answer in `records` (Zero counted as Positive). Reports which labels the
/// kept weights give z. Independent of the LP code path.
inline WitnessSearch search_witnesses(std::span<const QueryRecord> records, const Point& z, std::size_t samples,
                                      Rng& rng) {
  const auto D = static_cast<Eigen::Index>(z.dim() + 1);
  Eigen::MatrixXd rows(D, static_cast<Eigen::Index>(records.size()));
  Eigen::VectorXd want(static_cast<Eigen::Index>(records.size()));
  for (std::size_t i = 0; i < records.size(); ++i) {
    rows.col(static_cast<Eigen::Index>(i)) = records[i].subject.coords();
    want[static_cast<Eigen::Index>(i)] = records[i].answer == Sign::Negative ? -1.0 : 1.0;
  }
  const Eigen::VectorXd target = lift_point(z).coords();
  WitnessSearch out;
  Eigen::VectorXd w(D);
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index j = 0; j < D; ++j) w[j] = rng.uniform(-1.0, 1.0);
    bool ok = true;
    for (Eigen::Index i = 0; i < rows.cols() && ok; ++i) {
      const double v = rows.col(i).dot(w);
      ok = want[i] > 0 ? v >= 0.0 : v < 0.0;
    }
    if (!ok) continue;
    ++out.consistent;
    if (target.dot(w) >= 0.0) {
      out.labels_positive = true;
    } else {
      out.labels_negative = true;
    }
  }
  return out;
}

/// True when a found witness contradicts the verdict.
inline bool contradicts(InferenceVerdict verdict, const WitnessSearch& search) {
  switch (verdict) {
    case InferenceVerdict::InferredPositive:
      return search.labels_negative;
    case InferenceVerdict::InferredNegative:
      return search.labels_positive;
    case InferenceVerdict::Unknown:
      return false;
  }
  return false;
}

}  // namespace infdim::testing

#endif  // INFDIM_TESTS_WITNESS_HPP_
