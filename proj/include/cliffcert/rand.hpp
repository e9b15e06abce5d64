// Copyright 2026 The cliffcert authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLIFFCERT_RAND_HPP
#define CLIFFCERT_RAND_HPP

#include <cstdint>
#include <random>

namespace cliffcert {

using Rng = std::mt19937_64;

// splitmix64 step; used to derive well-separated per-stream seeds from a
// master seed so that parallel trials are independent of scheduling order.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t derive_stream_seed(uint64_t master, uint64_t stream) {
  uint64_t state = master;
  uint64_t mixed = splitmix64(state);
  state = mixed ^ stream;
  return splitmix64(state);
}

// Uniform double in [0, 1) with 53 random bits. Hand-rolled instead of
// std::uniform_real_distribution so the mapping from generator output to
// doubles is fixed, not implementation-defined.
inline double rand_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool rand_bit(Rng& rng) { return (rng() >> 63) != 0; }

// Uniform integer in {0, ..., n-1} by rejection (unbiased, portable).
inline uint64_t rand_below(Rng& rng, uint64_t n) {
  if (n == 0) return 0;
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

}  // namespace cliffcert

#endif
