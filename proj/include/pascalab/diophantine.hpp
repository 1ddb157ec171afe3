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
#include <vector>

#include <gmpxx.h>

namespace pascalab {

// A power of two that is a sum of distinct powers of three:
// 2^r = 3^s1 + ... + 3^sm with s1 < ... < sm. Equivalently, 2^r written
// in base 3 uses only digits 0 and 1; the exponents are the digit
// positions holding a 1.
struct SolutionRecord {
  std::uint32_t r = 0;
  mpz_class value;
  std::vector<std::uint32_t> exponents;
};

// All solutions with r <= r_max, by exact base-3 digit extraction of 2^r.
std::vector<SolutionRecord> search_pow2_sum_pow3(std::uint32_t r_max);

// Integers whose digits in one base are restricted to an allowed set.
struct DigitSet {
  std::uint32_t base = 2;
  std::vector<std::uint32_t> allowed;

  // Digits 0 through floor(base / 2), the default restriction.
  static DigitSet half_range(std::uint32_t base);

  bool member(const mpz_class& value) const;
};

// All integers in [0, bound] lying in every digit-restricted set.
// Enumerates members of the first set with a digit odometer over its
// allowed digits and filters by the rest, so the cost scales with the
// first set's density rather than with bound.
std::vector<mpz_class> cantor_intersect(const std::vector<DigitSet>& sets,
                                        const mpz_class& bound);

}  // namespace pascalab
