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

#include "pascalab/theta_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "pascalab/errors.hpp"
#include "pascalab/pascal_path.hpp"
#include "pascalab/residue_engine.hpp"
#include "pascalab/rng.hpp"

namespace pascalab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// 2|sin(pi {res p / q})| for every residue and multiplier pair.
std::vector<double> circle_weights(std::uint32_t q) {
  std::vector<double> w(static_cast<std::size_t>(q) * q);
  for (std::uint32_t res = 0; res < q; ++res) {
    for (std::uint32_t p = 0; p < q; ++p) {
      const std::uint32_t t =
          static_cast<std::uint32_t>((static_cast<std::uint64_t>(res) * p) % q);
      w[static_cast<std::size_t>(res) * q + p] =
          2.0 * std::fabs(std::sin(kPi * t / static_cast<double>(q)));
    }
  }
  return w;
}

void validate_calibration(double target, const CalibrationConfig& cfg) {
  if (!(target > 0.0 && target < 1.0)) {
    throw InvalidArgs("target mass must lie strictly between 0 and 1");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw InvalidArgs("alpha must lie strictly between 0 and 1");
  }
  if (cfg.samples == 0 || cfg.depth_max == 0) {
    throw InvalidArgs("need at least one sample and one depth");
  }
}

// Fixed chunk partition of the sample range, so parallel runs reduce to
// the same counts as serial ones no matter the thread schedule.
std::size_t chunk_count(std::size_t samples) {
  return std::min<std::size_t>(64, samples);
}

CalibrationResult scan_counts(const std::vector<std::uint64_t>& counts,
                              std::size_t samples, double target,
                              const char* what) {
  double best = -1.0;
  for (std::size_t depth = 1; depth < counts.size(); ++depth) {
    const double mass =
        static_cast<double>(counts[depth]) / static_cast<double>(samples);
    if (mass > target) {
      return {static_cast<std::uint32_t>(depth), mass};
    }
    best = std::max(best, mass);
  }
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "%s calibration stuck below target: best mass %.6f", what,
                best);
  throw CalibrationFailed(msg);
}

CalibrationResult calibrate_weyl(std::uint32_t q, double target,
                                 const CalibrationConfig& cfg) {
  if (!(cfg.threshold > 0.0)) {
    throw InvalidArgs("threshold must be positive");
  }
  const std::vector<double> weights = circle_weights(q);
  const std::uint32_t depth_max = cfg.depth_max;
  const std::size_t chunks = chunk_count(cfg.samples);
  auto partial = run_replicas(
      chunks, cfg.exec, [&](std::size_t c) -> std::vector<std::uint32_t> {
        const std::size_t begin = c * cfg.samples / chunks;
        const std::size_t end = (c + 1) * cfg.samples / chunks;
        std::vector<std::uint32_t> counts(depth_max + 1, 0);
        std::vector<double> sums(q);
        for (std::size_t i = begin; i < end; ++i) {
          SplitMix64 rng(derive_seed(cfg.seed, i));
          ResidueOdometer odo(q);
          std::fill(sums.begin(), sums.end(), 0.0);
          for (std::uint32_t j = 0; j < depth_max; ++j) {
            if (j > 0) {
              odo.step(rng.next_bernoulli(cfg.alpha) ? 1 : 0);
            }
            const double* row =
                &weights[static_cast<std::size_t>(odo.residue()) * q];
            for (std::uint32_t p = 1; p < q; ++p) {
              sums[p] += row[p];
            }
            // A path is accepted at depth j+1 when its running average
            // stays under the threshold for every nonzero multiplier;
            // the zero multiplier contributes nothing by definition.
            const double bound = cfg.threshold * (j + 1);
            bool accepted = true;
            for (std::uint32_t p = 1; p < q; ++p) {
              if (!(sums[p] < bound)) {
                accepted = false;
                break;
              }
            }
            if (accepted) ++counts[j + 1];
          }
        }
        return counts;
      });
  std::vector<std::uint64_t> counts(depth_max + 1, 0);
  for (const auto& part : partial) {
    for (std::size_t d = 0; d < part.size(); ++d) counts[d] += part[d];
  }
  return scan_counts(counts, cfg.samples, target, "circle-average");
}

CalibrationResult calibrate_sweep(std::uint32_t q, double target,
                                  const CalibrationConfig& cfg) {
  if (q > 31) {
    throw InvalidArgs("class bitmask supports moduli up to 31");
  }
  std::vector<std::uint64_t> rows(cfg.depth_max);
  for (std::uint32_t s = 1; s <= cfg.depth_max; ++s) {
    rows[s - 1] = probe_row(q, s, cfg.rule);
  }
  const std::uint32_t full = (1u << q) - 1;
  const std::size_t chunks = chunk_count(cfg.samples);
  auto partial = run_replicas(
      chunks, cfg.exec, [&](std::size_t c) -> std::vector<std::uint32_t> {
        const std::size_t begin = c * cfg.samples / chunks;
        const std::size_t end = (c + 1) * cfg.samples / chunks;
        std::vector<std::uint32_t> counts(cfg.depth_max + 1, 0);
        for (std::size_t i = begin; i < end; ++i) {
          SplitMix64 rng(derive_seed(cfg.seed, i));
          ResidueOdometer odo(q);
          std::uint32_t mask = 0;
          std::uint64_t level = 0;
          for (std::uint32_t stage = 1; stage <= cfg.depth_max; ++stage) {
            while (level < rows[stage - 1]) {
              odo.step(rng.next_bernoulli(cfg.alpha) ? 1 : 0);
              ++level;
            }
            mask |= 1u << odo.residue();
            if (mask == full) {
              ++counts[stage];
              break;
            }
          }
        }
        return counts;
      });
  // counts[s] holds paths whose last missing class arrived at stage s;
  // the union event is cumulative in depth.
  std::vector<std::uint64_t> counts(cfg.depth_max + 1, 0);
  for (const auto& part : partial) {
    for (std::size_t d = 0; d < part.size(); ++d) counts[d] += part[d];
  }
  for (std::size_t d = 1; d < counts.size(); ++d) counts[d] += counts[d - 1];
  return scan_counts(counts, cfg.samples, target, "class-sweep");
}

// Largest stage whose probe row stays within the default level budget.
std::uint32_t sweep_depth_limit(std::uint32_t q, RowRule rule,
                                std::uint32_t cap) {
  std::uint32_t s = 0;
  while (s < cap) {
    std::uint64_t row;
    try {
      row = probe_row(q, s + 1, rule);
    } catch (const OutOfRange&) {
      break;
    }
    if (row > kDefaultLevelCap) break;
    ++s;
  }
  if (s == 0) {
    throw InvalidArgs("modulus too large for any probe row in budget");
  }
  return s;
}

mpz_class pow2(std::uint64_t e) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, e);
  return v;
}

Rational pow2_neg(std::uint64_t e) {
  Rational r(1);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), e);
  return r;
}

}  // namespace

double fixed_point_to_double(const FixedPointReal& v) {
  mpf_class f(0, 128);
  mpf_set_z(f.get_mpf_t(), v.bits.get_mpz_t());
  mpf_div_2exp(f.get_mpf_t(), f.get_mpf_t(), v.precision);
  return f.get_d();
}

CalibrationResult calibrate_R(std::uint32_t q, double target_mass,
                              CalibrationMode mode,
                              const CalibrationConfig& cfg) {
  if (!is_prime(q)) {
    throw InvalidArgs("modulus must be prime");
  }
  validate_calibration(target_mass, cfg);
  return mode == CalibrationMode::kWeyl
             ? calibrate_weyl(q, target_mass, cfg)
             : calibrate_sweep(q, target_mass, cfg);
}

double delta_log_bound(std::uint32_t q, std::uint32_t depth,
                       std::uint32_t n) {
  if (!is_prime(q)) {
    throw InvalidArgs("modulus must be prime");
  }
  if (n == 0 || depth == 0) {
    throw InvalidArgs("stage index and depth must be positive");
  }
  // The bound is 1 / (n C(N, mid)) with N = q^depth - 2; N must be at
  // least 2 for the central column to make sense.
  long double big_n;
  long double mid;
  bool fits = true;
  std::uint64_t pw = 1;
  for (std::uint32_t i = 0; i < depth && fits; ++i) {
    if (pw > (UINT64_MAX >> 2) / q) {
      fits = false;
    } else {
      pw *= q;
    }
  }
  if (fits) {
    if (pw < 4) {
      throw InvalidArgs("q^depth must be at least 4");
    }
    big_n = static_cast<long double>(pw - 2);
    mid = static_cast<long double>((pw - 2) / 2);
  } else {
    big_n = std::pow(static_cast<long double>(q),
                     static_cast<long double>(depth)) -
            2.0L;
    if (std::isinf(big_n)) {
      throw PrecisionOverflow("q^depth exceeds long double range");
    }
    mid = std::floor(big_n / 2.0L);
  }
  const long double ln2 = 0.6931471805599453094172321214581766L;
  const long double log2_binom =
      (std::lgamma(big_n + 1.0L) - std::lgamma(mid + 1.0L) -
       std::lgamma(big_n - mid + 1.0L)) /
      ln2;
  const long double log2_n =
      std::log2(static_cast<long double>(n));
  return static_cast<double>(-log2_n - log2_binom);
}

bool stage_bound_holds(const FixedPointReal& value, const Stage& stage) {
  const auto e = static_cast<long long>(std::floor(stage.log2_delta));
  if (e >= 0) {
    return true;  // radius at least 1 covers the whole unit interval
  }
  const Rational radius = pow2_neg(static_cast<std::uint64_t>(-e));
  Rational v(value.bits, pow2(value.precision));
  v.canonicalize();
  Rational center(stage.p, stage.q);
  center.canonicalize();
  Rational diff = v - center;
  if (diff < 0) diff = -diff;
  return diff < radius;
}

Rational frac_via_residue(std::uint32_t d_mod_q, std::uint32_t p,
                          std::uint32_t q) {
  if (!is_prime(q)) {
    throw InvalidArgs("modulus must be prime");
  }
  if (d_mod_q >= q) {
    throw InvalidArgs("residue must be below the modulus");
  }
  const std::uint64_t r = (static_cast<std::uint64_t>(d_mod_q) * p) % q;
  Rational out(static_cast<unsigned long>(r), static_cast<unsigned long>(q));
  out.canonicalize();
  return out;
}

double frac_fixed_point(const mpz_class& d, const FixedPointReal& theta) {
  if (theta.precision < 64) {
    throw InvalidArgs("fixed-point precision below 64 bits");
  }
  if (d < 0) {
    throw InvalidArgs("multiplier must be nonnegative");
  }
  const std::size_t blen = mpz_sizeinbase(d.get_mpz_t(), 2);
  if (blen + 53 > theta.precision) {
    throw InsufficientPrecision(
        "multiplier too wide for the stored fractional bits");
  }
  mpz_class t = d * theta.bits;
  mpz_fdiv_r_2exp(t.get_mpz_t(), t.get_mpz_t(), theta.precision);
  mpz_fdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), theta.precision - 53);
  return mpz_get_d(t.get_mpz_t()) * 0x1.0p-53;
}

ThetaConstruction build_theta(const std::vector<std::uint32_t>& primes,
                              double alpha, std::uint64_t seed,
                              CalibrationMode mode, DeltaMode delta_mode,
                              const BuildOptions& opts) {
  if (primes.size() < 2) {
    throw InvalidArgs("need at least two stages");
  }
  std::uint64_t tuple_space = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) {
      throw InvalidArgs("stage moduli must be prime");
    }
    if (i > 0 && primes[i] <= primes[i - 1]) {
      throw InvalidArgs("stage moduli must increase strictly");
    }
    tuple_space *= primes[i];
    if (tuple_space > 1000000) {
      throw InvalidArgs("numerator search space too large");
    }
  }
  if (!opts.epsilons.empty() && opts.epsilons.size() != primes.size()) {
    throw InvalidArgs("epsilon list must match the stage count");
  }
  if (!opts.thresholds.empty() && opts.thresholds.size() != primes.size()) {
    throw InvalidArgs("threshold list must match the stage count");
  }
  if (opts.min_precision < 64 || opts.max_precision < opts.min_precision) {
    throw InvalidArgs("precision bounds out of order or below 64");
  }

  ThetaConstruction tc;
  tc.mode = mode;
  tc.delta_mode = delta_mode;
  tc.alpha = alpha;
  tc.seed = seed;

  for (std::size_t idx = 0; idx < primes.size(); ++idx) {
    const auto n = static_cast<std::uint32_t>(idx + 1);
    const std::uint32_t q = primes[idx];
    const double epsilon =
        opts.epsilons.empty() ? std::exp2(-static_cast<double>(n))
                              : opts.epsilons[idx];
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw InvalidArgs("stage budgets must lie strictly between 0 and 1");
    }
    CalibrationConfig cc;
    cc.alpha = alpha;
    cc.seed = derive_seed(seed, n);
    cc.samples = opts.samples;
    cc.rule = opts.rule;
    cc.exec = opts.exec;
    if (mode == CalibrationMode::kWeyl) {
      cc.depth_max = opts.weyl_depth_max;
      cc.threshold = opts.thresholds.empty() ? 1.0 / n : opts.thresholds[idx];
    } else {
      cc.depth_max = sweep_depth_limit(q, opts.rule, opts.sweep_depth_cap);
    }
    const CalibrationResult cal = calibrate_R(q, 1.0 - epsilon, mode, cc);
    Stage st;
    st.index = n;
    st.q = q;
    st.depth = cal.depth;
    st.epsilon = epsilon;
    st.log2_delta = delta_mode == DeltaMode::kStrict
                        ? delta_log_bound(q, cal.depth, n)
                        : -static_cast<double>(cal.depth) *
                              std::log2(static_cast<double>(q));
    tc.stages.push_back(st);
  }

  // Radius actually used per stage: one bit under the floored bound, so
  // rounding slack in the log-gamma evaluation can never push past the
  // true bound.
  std::vector<long long> exponents(tc.stages.size());
  std::uint64_t widest = 0;
  for (std::size_t i = 0; i < tc.stages.size(); ++i) {
    const double b = tc.stages[i].log2_delta;
    if (!(b < 0)) {
      throw Error("stage radius bound is not contracting");
    }
    exponents[i] = static_cast<long long>(std::floor(b)) - 1;
    const auto mag = static_cast<std::uint64_t>(-exponents[i]);
    widest = std::max(widest, mag);
    if (mag + 128 > opts.max_precision) {
      throw PrecisionOverflow("stage radius needs more bits than allowed");
    }
  }
  std::uint32_t precision = std::max<std::uint32_t>(
      opts.min_precision, static_cast<std::uint32_t>(widest + 128));

  std::vector<Rational> radii(tc.stages.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    radii[i] = pow2_neg(static_cast<std::uint64_t>(-exponents[i]));
  }

  // Exhaustive numerator search: keep the tuples whose radius balls have
  // a common point inside [0,1), prefer the most nonzero numerators,
  // break ties toward the lexicographically smallest tuple. The all-zero
  // tuple is always feasible, so a winner exists.
  const std::size_t nstages = tc.stages.size();
  std::vector<std::uint32_t> tuple(nstages, 0);
  std::vector<std::uint32_t> best_tuple;
  int best_nonzero = -1;
  Rational best_lo;
  Rational best_hi;
  for (;;) {
    Rational lo(0);
    Rational hi(1);
    for (std::size_t i = 0; i < nstages; ++i) {
      Rational center(tuple[i], tc.stages[i].q);
      center.canonicalize();
      const Rational ball_lo = center - radii[i];
      const Rational ball_hi = center + radii[i];
      if (ball_lo > lo) lo = ball_lo;
      if (ball_hi < hi) hi = ball_hi;
    }
    if (lo < hi) {
      int nonzero = 0;
      for (std::uint32_t p : tuple) {
        if (p != 0) ++nonzero;
      }
      if (nonzero > best_nonzero) {
        best_nonzero = nonzero;
        best_tuple = tuple;
        best_lo = lo;
        best_hi = hi;
      }
    }
    std::size_t pos = nstages;
    while (pos > 0 && tuple[pos - 1] + 1 == tc.stages[pos - 1].q) {
      --pos;
    }
    if (pos == 0) break;
    ++tuple[pos - 1];
    std::fill(tuple.begin() + pos, tuple.end(), 0);
  }
  if (best_nonzero < 0) {
    throw Error("internal: no feasible numerator tuple");
  }
  for (std::size_t i = 0; i < nstages; ++i) {
    tc.stages[i].p = best_tuple[i];
  }

  // Make sure the rounding grid is far finer than the interval, then
  // round its midpoint up to the grid. Rounding up keeps the value on
  // the upper side of every stage center it approximates, so multiples
  // whose residue vanishes produce fractional parts just above zero
  // rather than just below one; the clustering then lands in the first
  // histogram bin instead of the last.
  const Rational width = best_hi - best_lo;
  const long long width_log2 =
      static_cast<long long>(
          mpz_sizeinbase(width.get_num().get_mpz_t(), 2)) -
      static_cast<long long>(
          mpz_sizeinbase(width.get_den().get_mpz_t(), 2));
  if (width_log2 < 0) {
    const std::uint64_t need = static_cast<std::uint64_t>(-width_log2) + 66;
    if (need > opts.max_precision) {
      throw PrecisionOverflow("interval too narrow for the precision cap");
    }
    precision =
        std::max(precision, static_cast<std::uint32_t>(need));
  }
  if (precision > opts.max_precision) {
    throw PrecisionOverflow("precision demand exceeds the configured cap");
  }

  const Rational mid = (best_lo + best_hi) / 2;
  mpz_class bits = mid.get_num();
  bits <<= precision;
  mpz_cdiv_q(bits.get_mpz_t(), bits.get_mpz_t(), mid.get_den().get_mpz_t());
  const mpz_class grid = pow2(precision);
  if (bits >= grid) {
    bits = grid - 1;
  }
  if (bits < 0) {
    bits = 0;
  }
  // The value must differ from every stage center exactly; a midpoint
  // that rounds onto one gets the smallest possible deterministic nudge.
  for (const Stage& st : tc.stages) {
    if (bits * st.q == grid * st.p) {
      bits += 1;
      break;
    }
  }
  tc.value.bits = bits;
  tc.value.precision = precision;

  for (const Stage& st : tc.stages) {
    if (bits * st.q == grid * st.p) {
      throw Error("internal: value collided with a stage center");
    }
    if (!stage_bound_holds(tc.value, st)) {
      throw Error("internal: stage bound violated after rounding");
    }
  }
  return tc;
}

std::size_t default_stats_horizon(const ThetaConstruction& tc) {
  const std::uint32_t B = tc.value.precision;
  const std::size_t cap = B > 64 ? B - 64 : 1;
  if (tc.value.bits == 0) {
    return std::min<std::size_t>(cap, kDefaultLevelCap);
  }
  const std::size_t blen = mpz_sizeinbase(tc.value.bits.get_mpz_t(), 2);
  // Fractional parts stay pinned near zero until the multipliers reach
  // the reciprocal of the value; give the interesting region 2048 levels
  // of room past that point.
  const std::size_t wrap = B - blen;
  const std::size_t h = std::max<std::size_t>(kDefaultLevelCap, wrap + 2048);
  return std::min(h, cap);
}

std::vector<FracSeries> theta_path_series(const ThetaConstruction& tc,
                                          std::size_t paths,
                                          std::size_t horizon, double alpha,
                                          std::uint64_t seed,
                                          Execution exec) {
  if (paths == 0 || horizon == 0) {
    throw InvalidArgs("need at least one path and one level");
  }
  if (horizon + 53 > tc.value.precision) {
    throw InsufficientPrecision("horizon too deep for the stored bits");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgs("alpha must lie strictly between 0 and 1");
  }
  return run_replicas(paths, exec, [&](std::size_t i) -> FracSeries {
    SplitMix64 rng(derive_seed(seed, i));
    BinomialTracker tracker;
    FracSeries s;
    s.values.resize(horizon);
    s.values[0] = frac_fixed_point(tracker.value(), tc.value);
    for (std::size_t j = 1; j < horizon; ++j) {
      tracker.advance(rng.next_bernoulli(alpha) ? 1 : 0);
      s.values[j] = frac_fixed_point(tracker.value(), tc.value);
    }
    return s;
  });
}

}  // namespace pascalab
