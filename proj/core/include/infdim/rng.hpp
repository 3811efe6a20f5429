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

#ifndef INFDIM_RNG_HPP_
#define INFDIM_RNG_HPP_

#include <cstdint>
#include <random>

namespace infdim {

/// Root seed plus a substream index. Every (seed, stream) pair names an
/// independent, reproducible sequence; trials use their index as stream.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Derives a stream id from a list of integers (grid index, trial, ...).
std::uint64_t mix_stream(std::uint64_t a, std::uint64_t b);

class Rng {
 public:
  explicit Rng(RngSeed seed);

  double uniform();                 // [0, 1)
  double uniform(double lo, double hi);
  double normal();                  // N(0, 1)
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n)

  /// An independent child generator; deterministic in (parent state, tag).
  Rng fork(std::uint64_t tag);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace infdim

#endif  // INFDIM_RNG_HPP_
