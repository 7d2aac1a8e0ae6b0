// Copyright 2026 tsgen contributors
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

#ifndef TSGEN_RNG_HPP
#define TSGEN_RNG_HPP

#include <cstdint>
#include <random>

namespace tsgen {

// Seeded random source built on std::mt19937_64, whose output sequence is
// pinned by the standard. Bounded draws and doubles are derived here by hand
// (never through std::uniform_*_distribution, which is not portable across
// standard library implementations), so the same seed yields the same stream
// everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). n must be >= 1. Rejection sampling keeps the
  // draw exactly uniform.
  uint64_t bounded(uint64_t n) {
    const uint64_t threshold = (-n) % n;
    for (;;) {
      uint64_t x = next_u64();
      if (x >= threshold) return x % n;
    }
  }

  // Deterministic per-item seed so sharded and sequential runs agree: the
  // base seed is xor-combined with the item id and scrambled (splitmix64).
  static uint64_t derive(uint64_t seed, uint64_t stream) {
    uint64_t z = seed ^ stream;
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace tsgen

#endif  // TSGEN_RNG_HPP
