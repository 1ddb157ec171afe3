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

#include "pascalab/pascal_path.hpp"

namespace pascalab {

// Deterministic Miller-Rabin with witness set {2, 3, 5, 7}, correct for
// all m < 3'215'031'751. Callers here pass moduli far below that.
bool is_prime(std::uint64_t m);

// C(n, k) mod q by Lucas' theorem: the product over base-q digit pairs of
// C(n_i, k_i) mod q, zero as soon as some digit of k exceeds the digit of
// n. Requires prime q; k > n yields 0.
std::uint32_t lucas_residue(std::uint64_t n, std::uint64_t k, std::uint32_t q);

// Number of carries when adding k and n-k in base q. By Kummer's theorem
// this equals the exponent of q in C(n, k). Requires prime q and k <= n.
std::uint32_t kummer_carries(std::uint64_t n, std::uint64_t k, std::uint32_t q);

// Exponent of q in C(n, k) via Legendre's factorial valuation,
// v(n!) - v(k!) - v((n-k)!). Independent of kummer_carries; the two are
// cross-checked in tests. Requires prime q and k <= n.
std::uint64_t legendre_valuation(std::uint64_t n, std::uint64_t k,
                                 std::uint32_t q);

// Closed form for row q^pow - 2: C(q^pow - 2, k) is congruent mod q to
// (-1)^k (k+1). Requires prime q, pow >= 1, q^pow - 2 within uint64, and
// k <= q^pow - 2.
std::uint32_t row_formula_residue(std::uint32_t q, std::uint32_t pow,
                                  std::uint64_t k);

// Number of positions j in the window [k, k + 2q - 1] on row q^pow - 2
// with C(row, j) congruent to p mod q. Every residue class, zero
// included, is hit exactly twice by consecutive windows of width 2q on
// that row; tests verify this count is 2 for all valid (k, p). Computed
// by lucas_residue on the actual row, not the closed form, so the two
// routes stay independent. Requires k + 2q - 1 <= q^pow - 2.
std::uint32_t window_residue_count(std::uint32_t q, std::uint32_t pow,
                                   std::uint64_t k, std::uint32_t p);

// Incremental residue and valuation of C(row, col) along a path. Keeps
// the base-q digits of col and row-col plus the addition carry chain.
// The valuation is the carry count (Kummer); when it is zero the residue
// is the product of per-digit binomials (Lucas). A step changes one
// digit vector at its low end and repairs the carry chain only until the
// carry into the next position is unchanged, so steps are amortized
// constant time. Tests compare every step against the direct formulas.
class ResidueOdometer {
 public:
  explicit ResidueOdometer(std::uint32_t q);

  void step(int bit);

  std::uint64_t level() const { return level_; }
  Vertex vertex() const { return {level_, ones_}; }

  // Carry count, equal to the exponent of q in the current C(row, col).
  std::uint64_t valuation() const { return carries_; }

  // C(row, col) mod q; zero exactly when valuation() > 0.
  std::uint32_t residue() const { return carries_ > 0 ? 0 : product_; }

 private:
  void bump(std::vector<std::uint32_t>& digits, std::size_t* touched);
  void refresh_factor(std::size_t pos);
  void repair_carries(std::size_t touched);

  std::uint32_t q_;
  std::uint64_t level_ = 0;
  std::uint64_t ones_ = 0;
  std::uint64_t carries_ = 0;
  std::uint32_t product_ = 1;
  std::vector<std::uint32_t> dig_col_;     // base-q digits of col
  std::vector<std::uint32_t> dig_rest_;    // base-q digits of row - col
  std::vector<std::uint8_t> carry_out_;    // carry out of each position
  std::vector<std::uint32_t> factor_;      // per-digit binomial mod q
  std::vector<std::uint32_t> binom_;       // C(a, b) mod q for a, b < q
  std::vector<std::uint32_t> inverse_;     // multiplicative inverses mod q
};

// Residues d_j mod q for j = 0 .. prefix length, where d_j is the
// binomial value at the level-j vertex of the prefix.
std::vector<std::uint32_t> path_residue_stream(const PathPrefix& prefix,
                                               std::uint32_t q);

// Membership view for one residue class on one row: which columns k of
// `row` satisfy C(row, k) congruent to target mod q. Thin wrapper so the
// statistics layer can talk about classes without repeating the modulus
// plumbing.
struct ResidueClassSet {
  std::uint64_t row;
  std::uint32_t q;
  std::uint32_t target;

  bool contains(std::uint64_t col) const {
    return lucas_residue(row, col, q) == target;
  }
};

}  // namespace pascalab
