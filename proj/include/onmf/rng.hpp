// Copyright 2026 The onmfkit Authors.
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

#ifndef ONMF_RNG_HPP_
#define ONMF_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace onmf {

// All randomized code in the library draws from this engine through the
// helpers below. std::mt19937_64 output is fully specified by the standard;
// the standard *distributions* are not, so we never use them. This keeps
// seeded runs reproducible across compilers and platforms.
using Rng = std::mt19937_64;

// Uniform draw from {0, 1, ..., n-1}. Rejection-free modulo mapping; the
// bias is below 2^-53 for any n that fits in an int.
inline std::size_t rng_below(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// Uniform double in [0, 1) with 53 random bits.
inline double rng_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi).
inline double rng_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng_unit(rng);
}

// k distinct values from the candidate list, by partial Fisher-Yates.
inline std::vector<long> rng_sample_distinct(Rng& rng, std::vector<long> candidates, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + rng_below(rng, candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(k);
  return candidates;
}

}  // namespace onmf

#endif  // ONMF_RNG_HPP_
