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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "pascalab/errors.hpp"
#include "pascalab/pascal_path.hpp"
#include "pascalab/residue_engine.hpp"

namespace pascalab {
namespace {

mpz_class exact_binom(std::uint64_t n, std::uint64_t k) {
  mpz_class v;
  mpz_bin_uiui(v.get_mpz_t(), n, k);
  return v;
}

std::uint32_t exact_residue(std::uint64_t n, std::uint64_t k,
                            std::uint32_t q) {
  const mpz_class v = exact_binom(n, k);
  return static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), q));
}

std::uint64_t exact_valuation(std::uint64_t n, std::uint64_t k,
                              std::uint32_t q) {
  mpz_class v = exact_binom(n, k);
  std::uint64_t count = 0;
  while (v != 0 && mpz_divisible_ui_p(v.get_mpz_t(), q)) {
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), q);
    ++count;
  }
  return count;
}

TEST_CASE("primality by trusted small cases") {
  const std::uint64_t primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                  23, 97, 101, 1000003, 2147483647ULL};
  for (auto p : primes) CHECK(is_prime(p));
  // 561, 29341 and 172081 are Carmichael numbers, classic trial-division
  // traps; the rest are everyday composites and edge values.
  const std::uint64_t composites[] = {0, 1, 4, 6, 9, 15, 100, 561,
                                      29341, 172081, 32769, 1000001};
  for (auto c : composites) CHECK_FALSE(is_prime(c));
}

TEST_CASE("digit-product residues match exact arithmetic") {
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    for (std::uint64_t n = 0; n <= 60; ++n) {
      for (std::uint64_t k = 0; k <= n; ++k) {
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(k);
        CHECK(lucas_residue(n, k, q) == exact_residue(n, k, q));
      }
    }
  }
}

TEST_CASE("residue of an out-of-triangle entry is zero") {
  CHECK(lucas_residue(5, 9, 3) == 0);
}

TEST_CASE("composite moduli are rejected") {
  CHECK_THROWS_AS(lucas_residue(10, 4, 6), InvalidArgs);
  CHECK_THROWS_AS(kummer_carries(10, 4, 9), InvalidArgs);
  CHECK_THROWS_AS(legendre_valuation(10, 4, 10), InvalidArgs);
}

TEST_CASE("carry count equals factorial-valuation difference") {
  // Two routes to the same exponent: counting base-q carries in
  // k + (n-k) versus subtracting factorial valuations.
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u}) {
    for (std::uint64_t n = 0; n <= 60; ++n) {
      for (std::uint64_t k = 0; k <= n; ++k) {
        const std::uint32_t carries = kummer_carries(n, k, q);
        CHECK(carries == legendre_valuation(n, k, q));
        CHECK(carries == exact_valuation(n, k, q));
      }
    }
  }
  // Spot checks far beyond the exhaustive range.
  const std::uint64_t big_n[] = {1000003, 999999937, 123456789012345ULL};
  const std::uint64_t big_k[] = {271828, 141421356, 98765432101ULL};
  for (int i = 0; i < 3; ++i) {
    for (std::uint32_t q : {2u, 3u, 7u}) {
      CHECK(kummer_carries(big_n[i], big_k[i], q) ==
            legendre_valuation(big_n[i], big_k[i], q));
    }
  }
}

TEST_CASE("zero residue exactly when the valuation is positive") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    for (std::uint64_t n = 0; n <= 40; ++n) {
      for (std::uint64_t k = 0; k <= n; ++k) {
        CHECK((lucas_residue(n, k, q) == 0) == (kummer_carries(n, k, q) > 0));
      }
    }
  }
}

TEST_CASE("alternating closed form on the distinguished rows") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    for (std::uint32_t pow = 1;; ++pow) {
      std::uint64_t row = 1;
      for (std::uint32_t i = 0; i < pow; ++i) row *= q;
      row -= 2;
      if (row > 3000) break;
      for (std::uint64_t k = 0; k <= row; ++k) {
        CAPTURE(q);
        CAPTURE(pow);
        CAPTURE(k);
        CHECK(row_formula_residue(q, pow, k) == lucas_residue(row, k, q));
      }
    }
  }
}

TEST_CASE("closed form hand values") {
  // Row 7 = 3^2 - 2: entries 1,7,21,35,35,21,7,1; mod 3: 1,1,0,2,2,0,1,1.
  const std::uint32_t expected[] = {1, 1, 0, 2, 2, 0, 1, 1};
  for (std::uint64_t k = 0; k <= 7; ++k) {
    CHECK(row_formula_residue(3, 2, k) == expected[k]);
  }
}

TEST_CASE("every window of width 2q covers each class twice") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    std::uint64_t row = 1;
    for (std::uint32_t pow = 1;; ++pow) {
      row *= q;
      if (row > 2200) break;
      if (row - 2 < 2 * q - 1) continue;  // window would not fit the row
      const std::uint64_t top = row - 2 - (2 * q - 1);
      for (std::uint64_t k = 0; k <= top; ++k) {
        for (std::uint32_t p = 0; p < q; ++p) {
          CAPTURE(q);
          CAPTURE(pow);
          CAPTURE(k);
          CAPTURE(p);
          CHECK(window_residue_count(q, pow, k, p) == 2);
        }
      }
    }
  }
}

TEST_CASE("odometer agrees with the direct formulas step by step") {
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    const PathPrefix prefix = sample_path(2000, 0.5, 7u + q);
    ResidueOdometer odo(q);
    CHECK(odo.residue() == 1);
    CHECK(odo.valuation() == 0);
    for (std::size_t j = 0; j < prefix.size(); ++j) {
      odo.step(prefix[j]);
      const Vertex v = odo.vertex();
      CHECK(v.row == j + 1);
      CAPTURE(q);
      CAPTURE(j);
      CHECK(odo.residue() == lucas_residue(v.row, v.col, q));
      CHECK(odo.valuation() == kummer_carries(v.row, v.col, q));
    }
  }
}

TEST_CASE("odometer survives deep carry cascades") {
  // An all-ones path walks the diagonal where every entry is 1; an
  // all-zeros path stays in column 0. Both cross many digit rollovers.
  for (int bit : {0, 1}) {
    ResidueOdometer odo(3);
    for (int j = 0; j < 4096; ++j) {
      odo.step(bit);
      CHECK(odo.residue() == 1);
      CHECK(odo.valuation() == 0);
    }
  }
  // Alternating labels exercise both digit vectors.
  ResidueOdometer odo(2);
  for (int j = 0; j < 4096; ++j) {
    odo.step(j & 1);
    const Vertex v = odo.vertex();
    if (j % 257 == 0) {
      CHECK(odo.residue() == lucas_residue(v.row, v.col, 2));
      CHECK(odo.valuation() == kummer_carries(v.row, v.col, 2));
    }
  }
}

TEST_CASE("residue stream covers every level of the prefix") {
  const PathPrefix prefix{1, 0, 1, 1, 0};
  const auto stream = path_residue_stream(prefix, 3);
  REQUIRE(stream.size() == prefix.size() + 1);
  for (std::size_t j = 0; j < stream.size(); ++j) {
    const Vertex v = vertex_at(prefix, j);
    CHECK(stream[j] == lucas_residue(v.row, v.col, 3));
  }
}

TEST_CASE("class membership view matches the residue") {
  const ResidueClassSet set{13, 3, 1};
  for (std::uint64_t k = 0; k <= 13; ++k) {
    CHECK(set.contains(k) == (lucas_residue(13, k, 3) == 1));
  }
}

}  // namespace
}  // namespace pascalab
