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

#include "pascalab/pascal_path.hpp"

#include "pascalab/errors.hpp"
#include "pascalab/rng.hpp"

namespace pascalab {

void BinomialTracker::advance(int bit) {
  if (bit != 0 && bit != 1) {
    throw InvalidArgs("path labels must be 0 or 1");
  }
  // C(r+1, c+1) = C(r, c) (r+1)/(c+1) and C(r+1, c) = C(r, c) (r+1)/(r+1-c),
  // both divisions exact.
  const unsigned long next_row = static_cast<unsigned long>(v_.row + 1);
  mpz_mul_ui(value_.get_mpz_t(), value_.get_mpz_t(), next_row);
  if (bit == 1) {
    ++v_.col;
    mpz_divexact_ui(value_.get_mpz_t(), value_.get_mpz_t(),
                    static_cast<unsigned long>(v_.col));
  } else {
    mpz_divexact_ui(value_.get_mpz_t(), value_.get_mpz_t(),
                    static_cast<unsigned long>(next_row - v_.col));
  }
  v_.row = next_row;
}

void advance_tracker(BinomialTracker& tracker, int bit) {
  tracker.advance(bit);
}

Vertex vertex_at(const PathPrefix& prefix, std::size_t level) {
  if (level > prefix.size()) {
    throw OutOfRange("level exceeds prefix length");
  }
  Vertex v;
  v.row = level;
  for (std::size_t i = 0; i < level; ++i) {
    v.col += prefix[i];
  }
  return v;
}

PathPrefix sample_path(std::size_t length, double alpha, std::uint64_t seed) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgs("alpha must lie in [0,1]");
  }
  SplitMix64 rng(seed);
  PathPrefix prefix(length);
  for (std::size_t i = 0; i < length; ++i) {
    prefix[i] = rng.next_bernoulli(alpha) ? 1 : 0;
  }
  return prefix;
}

std::optional<PathPrefix> adic_successor(const PathPrefix& prefix) {
  // Locate the head 1^a 0^z 1 ... ; without a 1 after the zeros the
  // prefix is maximal.
  std::size_t a = 0;
  while (a < prefix.size() && prefix[a] == 1) ++a;
  std::size_t end = a;
  while (end < prefix.size() && prefix[end] == 0) ++end;
  if (end == prefix.size()) {
    return std::nullopt;
  }
  const std::size_t zeros = end - a;  // at least 1, prefix[end] == 1
  PathPrefix out(prefix);
  std::size_t i = 0;
  for (; i < zeros - 1; ++i) out[i] = 0;
  for (; i < zeros + a; ++i) out[i] = 1;
  out[i] = 0;  // i == end; the tail beyond stays as it was
  return out;
}

}  // namespace pascalab
