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

#include "pascalab/diophantine.hpp"

#include <algorithm>

#include "pascalab/errors.hpp"

namespace pascalab {

std::vector<SolutionRecord> search_pow2_sum_pow3(std::uint32_t r_max) {
  std::vector<SolutionRecord> out;
  mpz_class v = 1;
  for (std::uint32_t r = 0; r <= r_max; ++r) {
    // 2^r is a sum of distinct powers of 3 exactly when its base-3
    // expansion uses only digits 0 and 1.
    mpz_class rest = v;
    std::vector<std::uint32_t> exponents;
    bool clean = true;
    std::uint32_t e = 0;
    while (rest != 0) {
      const unsigned long digit =
          mpz_fdiv_ui(rest.get_mpz_t(), 3);
      if (digit > 1) {
        clean = false;
        break;
      }
      if (digit == 1) {
        exponents.push_back(e);
      }
      mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), 3);
      ++e;
    }
    if (clean) {
      out.push_back({r, v, std::move(exponents)});
    }
    v <<= 1;
  }
  return out;
}

DigitSet DigitSet::half_range(std::uint32_t base) {
  if (base < 2) {
    throw InvalidArgs("digit base must be at least 2");
  }
  DigitSet s;
  s.base = base;
  for (std::uint32_t d = 0; d <= base / 2; ++d) {
    s.allowed.push_back(d);
  }
  return s;
}

bool DigitSet::member(const mpz_class& value) const {
  if (value < 0) {
    return false;
  }
  if (value == 0) {
    return std::find(allowed.begin(), allowed.end(), 0u) != allowed.end();
  }
  mpz_class rest = value;
  while (rest != 0) {
    const unsigned long digit = mpz_fdiv_ui(rest.get_mpz_t(), base);
    if (std::find(allowed.begin(), allowed.end(),
                  static_cast<std::uint32_t>(digit)) == allowed.end()) {
      return false;
    }
    mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), base);
  }
  return true;
}

namespace {

void validate_digit_set(const DigitSet& s) {
  if (s.base < 2) {
    throw InvalidArgs("digit base must be at least 2");
  }
  if (s.allowed.empty()) {
    throw InvalidArgs("digit set must allow at least one digit");
  }
  for (std::size_t i = 0; i < s.allowed.size(); ++i) {
    if (s.allowed[i] >= s.base) {
      throw InvalidArgs("allowed digit at or above the base");
    }
    if (i > 0 && s.allowed[i] <= s.allowed[i - 1]) {
      throw InvalidArgs("allowed digits must increase strictly");
    }
  }
}

// Depth-first enumeration, most significant digit first, of every value
// with exactly `len` digits over the first set's alphabet, pruned at the
// bound and filtered through the remaining sets.
void enumerate_level(const std::vector<DigitSet>& sets, const mpz_class& bound,
                     std::uint32_t len, std::uint32_t pos,
                     mpz_class& prefix, std::vector<mpz_class>& out) {
  const DigitSet& lead = sets.front();
  if (pos == len) {
    bool keep = true;
    for (std::size_t i = 1; i < sets.size(); ++i) {
      if (!sets[i].member(prefix)) {
        keep = false;
        break;
      }
    }
    if (keep) {
      out.push_back(prefix);
    }
    return;
  }
  for (std::uint32_t d : lead.allowed) {
    if (pos == 0 && d == 0) {
      continue;  // no leading zeros past the single value 0
    }
    mpz_class next = prefix * lead.base + d;
    // The all-zero completion is the smallest one, and prefixes grow
    // with the digit, so the first overshoot ends the whole level.
    mpz_class floor_completion = next;
    for (std::uint32_t rest = pos + 1; rest < len; ++rest) {
      floor_completion *= lead.base;
    }
    if (floor_completion > bound) {
      return;
    }
    std::swap(prefix, next);
    enumerate_level(sets, bound, len, pos + 1, prefix, out);
    std::swap(prefix, next);
  }
}

}  // namespace

std::vector<mpz_class> cantor_intersect(const std::vector<DigitSet>& sets,
                                        const mpz_class& bound) {
  if (sets.empty()) {
    throw InvalidArgs("need at least one digit set");
  }
  for (const DigitSet& s : sets) {
    validate_digit_set(s);
  }
  if (bound < 0) {
    return {};
  }
  std::vector<mpz_class> out;
  const DigitSet& lead = sets.front();
  const bool zero_in_lead =
      std::find(lead.allowed.begin(), lead.allowed.end(), 0u) !=
      lead.allowed.end();
  if (zero_in_lead) {
    bool keep = true;
    for (std::size_t i = 1; i < sets.size(); ++i) {
      if (!sets[i].member(0)) {
        keep = false;
        break;
      }
    }
    if (keep) {
      out.push_back(0);
    }
  }
  // Values with exactly len digits in the lead base, ascending in len,
  // are ascending overall, so the output needs no final sort.
  mpz_class smallest_with_len = 1;
  for (std::uint32_t len = 1; smallest_with_len <= bound; ++len) {
    mpz_class prefix = 0;
    enumerate_level(sets, bound, len, 0, prefix, out);
    smallest_with_len *= lead.base;
  }
  return out;
}

}  // namespace pascalab
