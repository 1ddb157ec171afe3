// Copyright 2026 the pascalab authors
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

#pragma once

#include <cstdint>

namespace pascalab {

// SplitMix64 generator (Steele, Lea, Flood 2014). Chosen over the standard
// library engines because every experiment here must replay bit-identically
// across platforms, and std::uniform_real_distribution is not portable.
// Constants are the reference ones; do not change them, recorded seeds in
// published artifacts depend on the exact stream.
inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ULL;

// Finalizer of SplitMix64, also usable as a standalone 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kSplitMixGamma;
    return mix64(state_);
  }

  // Uniform double in [0, 1) built from the top 53 bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  bool next_bernoulli(double alpha) { return next_unit() < alpha; }

  // Uniform integer in [0, bound) by rejection, bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

// Seed for replica number `index` of a run seeded with `seed`. Equals the
// (index+1)-th raw output of SplitMix64(seed), so the family of replica
// streams is itself one deterministic SplitMix64 sequence.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + (index + 1) * kSplitMixGamma);
}

}  // namespace pascalab
