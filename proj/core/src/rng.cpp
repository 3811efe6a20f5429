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

#include "infdim/rng.hpp"

namespace infdim {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_stream(std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = a * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL;
  std::uint64_t h = splitmix64(state);
  state = h ^ (b + 0x8cb92ba72f3d8dd7ULL);
  return splitmix64(state);
}

Rng::Rng(RngSeed seed) {
  std::uint64_t state = seed.seed;
  const std::uint64_t s0 = splitmix64(state);
  state ^= seed.stream * 0xff51afd7ed558ccdULL;
  const std::uint64_t s1 = splitmix64(state);
  const std::uint64_t s2 = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(s0), static_cast<std::uint32_t>(s0 >> 32),
                    static_cast<std::uint32_t>(s1), static_cast<std::uint32_t>(s1 >> 32),
                    static_cast<std::uint32_t>(s2), static_cast<std::uint32_t>(s2 >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() { return normal_(engine_); }

std::uint64_t Rng::below(std::uint64_t n) {
  std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
  return dist(engine_);
}

Rng Rng::fork(std::uint64_t tag) { return Rng(RngSeed{engine_(), tag}); }

}  // namespace infdim
