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
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace pascalab {

// A finite path prefix in the binary-coefficient graph, encoded as edge
// labels from the root. Label 0 keeps the column, label 1 shifts it, so a
// prefix of length L ends at row L in column (number of 1 labels).
using PathPrefix = std::vector<std::uint8_t>;

// Default ceiling on experiment depth. Tracker values stay below
// C(4096, 2048), roughly 2^4094, which big integers handle comfortably.
// Deeper runs are allowed but must ask for it explicitly.
inline constexpr std::size_t kDefaultLevelCap = 4096;

struct Vertex {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// Walks a path while maintaining the exact binomial value C(row, col) at
// the current vertex. One multiply and one divide per step, both exact.
class BinomialTracker {
 public:
  BinomialTracker() : value_(1) {}

  const Vertex& vertex() const { return v_; }
  const mpz_class& value() const { return value_; }

  void advance(int bit);

 private:
  Vertex v_;
  mpz_class value_;
};

// One step of the tracker as a free function, for symmetry with the other
// module entry points.
void advance_tracker(BinomialTracker& tracker, int bit);

// Vertex reached after following the first `level` labels of the prefix.
// Throws OutOfRange if level exceeds the prefix length.
Vertex vertex_at(const PathPrefix& prefix, std::size_t level);

// Random prefix of the given length; each label is 1 with probability
// alpha, independently, drawn from SplitMix64(seed).
PathPrefix sample_path(std::size_t length, double alpha, std::uint64_t seed);

// Successor of the prefix in the adic order on its level set: the earliest
// labels of the form 1^a 0^b 0 1 (a, b >= 0) are rewritten to 0^b 1^a 1 0
// and everything after is untouched. Returns nullopt for the maximal
// prefix 1^a 0^b, which has no successor. Iterating from the minimal
// prefix 0^(n-k) 1^k visits each prefix with k ones exactly once, in
// order, C(n, k) prefixes in total.
std::optional<PathPrefix> adic_successor(const PathPrefix& prefix);

}  // namespace pascalab
