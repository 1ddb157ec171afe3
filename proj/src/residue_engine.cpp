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

#include "pascalab/residue_engine.hpp"

#include <algorithm>

#include "pascalab/errors.hpp"

namespace pascalab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

void require_prime(std::uint32_t q) {
  if (!is_prime(q)) {
    throw InvalidArgs("modulus must be prime");
  }
}

// C(a, b) mod q for 0 <= b <= a < q, through factorials; no factor is
// divisible by q in this range.
std::uint64_t small_binom_mod(std::uint64_t a, std::uint64_t b,
                              std::uint32_t q) {
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  for (std::uint64_t i = 0; i < b; ++i) {
    num = mulmod(num, (a - i) % q, q);
    den = mulmod(den, (i + 1) % q, q);
  }
  return mulmod(num, powmod(den, q - 2, q), q);
}

// Sum over i >= 1 of floor(n / q^i), the exponent of q in n!.
std::uint64_t factorial_valuation(std::uint64_t n, std::uint32_t q) {
  std::uint64_t v = 0;
  while (n) {
    n /= q;
    v += n;
  }
  return v;
}

std::uint64_t checked_pow(std::uint32_t q, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / q) {
      throw OutOfRange("power does not fit in 64 bits");
    }
    r *= q;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t s : {2ULL, 3ULL, 5ULL, 7ULL}) {
    if (m % s == 0) return m == s;
  }
  std::uint64_t d = m - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL}) {
    std::uint64_t x = powmod(a, d, m);
    if (x == 1 || x == m - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, m);
      if (x == m - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint32_t lucas_residue(std::uint64_t n, std::uint64_t k,
                            std::uint32_t q) {
  require_prime(q);
  if (k > n) return 0;
  std::uint64_t res = 1;
  while (n || k) {
    const std::uint64_t nd = n % q;
    const std::uint64_t kd = k % q;
    if (kd > nd) return 0;
    res = mulmod(res, small_binom_mod(nd, kd, q), q);
    n /= q;
    k /= q;
  }
  return static_cast<std::uint32_t>(res);
}

std::uint32_t kummer_carries(std::uint64_t n, std::uint64_t k,
                             std::uint32_t q) {
  require_prime(q);
  if (k > n) {
    throw InvalidArgs("kummer_carries requires k <= n");
  }
  std::uint64_t a = k;
  std::uint64_t b = n - k;
  std::uint32_t carry = 0;
  std::uint32_t count = 0;
  while (a || b || carry) {
    const std::uint64_t s = a % q + b % q + carry;
    carry = s >= q ? 1 : 0;
    count += carry;
    a /= q;
    b /= q;
  }
  return count;
}

std::uint64_t legendre_valuation(std::uint64_t n, std::uint64_t k,
                                 std::uint32_t q) {
  require_prime(q);
  if (k > n) {
    throw InvalidArgs("legendre_valuation requires k <= n");
  }
  return factorial_valuation(n, q) - factorial_valuation(k, q) -
         factorial_valuation(n - k, q);
}

std::uint32_t row_formula_residue(std::uint32_t q, std::uint32_t pow,
                                  std::uint64_t k) {
  require_prime(q);
  if (pow == 0) {
    throw InvalidArgs("row exponent must be positive");
  }
  const std::uint64_t row = checked_pow(q, pow) - 2;
  if (k > row) {
    throw OutOfRange("column exceeds the row");
  }
  std::uint32_t val = static_cast<std::uint32_t>((k + 1) % q);
  if (k & 1) {
    val = (q - val) % q;
  }
  return val;
}

std::uint32_t window_residue_count(std::uint32_t q, std::uint32_t pow,
                                   std::uint64_t k, std::uint32_t p) {
  require_prime(q);
  if (p >= q) {
    throw InvalidArgs("residue class must be below the modulus");
  }
  const std::uint64_t row = checked_pow(q, pow) - 2;
  const std::uint64_t width = 2ULL * q;
  if (row < width - 1 || k > row - (width - 1)) {
    throw OutOfRange("window does not fit on the row");
  }
  std::uint32_t count = 0;
  for (std::uint64_t j = k; j < k + width; ++j) {
    if (lucas_residue(row, j, q) == p) ++count;
  }
  return count;
}

ResidueOdometer::ResidueOdometer(std::uint32_t q) : q_(q) {
  require_prime(q);
  // Pascal triangle mod q for the per-digit factors; rows below q carry
  // no multiples of q, so every table entry used as a factor is nonzero.
  binom_.assign(static_cast<std::size_t>(q) * q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    binom_[static_cast<std::size_t>(a) * q] = 1;
    for (std::uint32_t b = 1; b <= a; ++b) {
      const std::uint32_t up = binom_[static_cast<std::size_t>(a - 1) * q + b];
      const std::uint32_t upleft =
          binom_[static_cast<std::size_t>(a - 1) * q + b - 1];
      binom_[static_cast<std::size_t>(a) * q + b] = (up + upleft) % q;
    }
  }
  inverse_.assign(q, 0);
  for (std::uint32_t x = 1; x < q; ++x) {
    inverse_[x] = static_cast<std::uint32_t>(powmod(x, q - 2, q));
  }
  // Two slack positions keep the carry-chain scan inside the vectors.
  dig_col_.assign(2, 0);
  dig_rest_.assign(2, 0);
  carry_out_.assign(2, 0);
  factor_.assign(2, 1);
}

void ResidueOdometer::refresh_factor(std::size_t pos) {
  const std::uint32_t s = dig_col_[pos] + dig_rest_[pos];
  const std::uint32_t fresh =
      s < q_ ? binom_[static_cast<std::size_t>(s) * q_ + dig_col_[pos]] : 1;
  if (fresh != factor_[pos]) {
    product_ = static_cast<std::uint32_t>(
        mulmod(mulmod(product_, inverse_[factor_[pos]], q_), fresh, q_));
    factor_[pos] = fresh;
  }
}

void ResidueOdometer::bump(std::vector<std::uint32_t>& digits,
                           std::size_t* touched) {
  std::size_t pos = 0;
  while (digits[pos] == q_ - 1) {
    digits[pos] = 0;
    refresh_factor(pos);
    ++pos;
  }
  ++digits[pos];
  refresh_factor(pos);
  // Keep one all-zero position above the highest nonzero digit so a
  // pending carry always finds a place to die.
  if (pos + 2 > dig_col_.size()) {
    dig_col_.resize(pos + 2, 0);
    dig_rest_.resize(pos + 2, 0);
    carry_out_.resize(pos + 2, 0);
    factor_.resize(pos + 2, 1);
  }
  *touched = pos;
}

void ResidueOdometer::repair_carries(std::size_t touched) {
  std::uint32_t carry = 0;
  for (std::size_t i = 0; i < carry_out_.size(); ++i) {
    const std::uint8_t old_out = carry_out_[i];
    if (i > touched && carry == old_out) {
      // Above the touched position the digit sums are unchanged. When
      // the incoming carry equals the stored outgoing one, recomputing
      // would reproduce that stored value (check both carry cases
      // against sum >= q), so this position and the whole chain above
      // it are already correct.
      break;
    }
    const std::uint32_t s = dig_col_[i] + dig_rest_[i] + carry;
    const std::uint8_t now = s >= q_ ? 1 : 0;
    if (now != old_out) {
      if (now) {
        ++carries_;
      } else {
        --carries_;
      }
      carry_out_[i] = now;
    }
    carry = now;
  }
}

void ResidueOdometer::step(int bit) {
  if (bit != 0 && bit != 1) {
    throw InvalidArgs("path labels must be 0 or 1");
  }
  std::size_t touched = 0;
  if (bit == 1) {
    bump(dig_col_, &touched);
    ++ones_;
  } else {
    bump(dig_rest_, &touched);
  }
  repair_carries(touched);
  ++level_;
}

std::vector<std::uint32_t> path_residue_stream(const PathPrefix& prefix,
                                               std::uint32_t q) {
  ResidueOdometer odo(q);
  std::vector<std::uint32_t> out;
  out.reserve(prefix.size() + 1);
  out.push_back(odo.residue());
  for (std::uint8_t bit : prefix) {
    odo.step(bit);
    out.push_back(odo.residue());
  }
  return out;
}

}  // namespace pascalab
