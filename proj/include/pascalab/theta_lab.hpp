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

#include "pascalab/gasket.hpp"
#include "pascalab/parallel.hpp"
#include "pascalab/stats.hpp"

namespace pascalab {

// How stage depths are calibrated. kWeyl accepts a path when its running
// circle averages are below a per-stage threshold for every multiplier;
// kSweep accepts a path once it has met every residue class at the probe
// rows. Either way the depth is the smallest tested value whose accepted
// fraction exceeds the stage's target mass.
enum class CalibrationMode { kWeyl, kSweep };

// Radius schedule for the rational approximations. kStrict uses the
// reciprocal central-binomial bound, which shrinks so fast that only two
// stages fit in practical precision. kRelaxed uses q^-depth, documented
// as weaker, to allow a third stage.
enum class DeltaMode { kStrict, kRelaxed };

struct Stage {
  std::uint32_t index = 1;  // 1-based stage number
  std::uint32_t q = 2;      // prime modulus
  std::uint32_t p = 0;      // numerator of the stage target p/q
  std::uint32_t depth = 1;  // calibrated depth R
  double log2_delta = 0;    // log2 of the admissible radius bound
  double epsilon = 0;       // stage mass budget
};

// A real in [0,1) as bits / 2^precision.
struct FixedPointReal {
  mpz_class bits;
  std::uint32_t precision = 64;
};

double fixed_point_to_double(const FixedPointReal& v);

struct ThetaConstruction {
  std::vector<Stage> stages;
  FixedPointReal value;
  CalibrationMode mode = CalibrationMode::kSweep;
  DeltaMode delta_mode = DeltaMode::kStrict;
  double alpha = 0.5;
  std::uint64_t seed = 0;
};

struct CalibrationConfig {
  double alpha = 0.5;
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::uint32_t depth_max = 4096;  // levels for kWeyl, stages for kSweep
  double threshold = 1.0;          // kWeyl acceptance threshold
  RowRule rule = RowRule::kPowMinusTwo;
  Execution exec = Execution::kSerial;
};

struct CalibrationResult {
  std::uint32_t depth = 0;
  double achieved_mass = 0;
};

// Smallest tested depth whose accepted-path fraction exceeds target_mass.
// Throws CalibrationFailed (reporting the best fraction seen) when no
// depth up to cfg.depth_max reaches the target.
CalibrationResult calibrate_R(std::uint32_t q, double target_mass,
                              CalibrationMode mode,
                              const CalibrationConfig& cfg);

// log2 of the stage radius bound 1 / (n * C(q^depth - 2, mid)), mid the
// central column, computed through log-gamma so no big integer is formed.
// Strictly above the true log2 of the radius in use.
double delta_log_bound(std::uint32_t q, std::uint32_t depth, std::uint32_t n);

struct BuildOptions {
  std::size_t samples = 10000;
  std::uint32_t weyl_depth_max = 4096;
  std::uint32_t sweep_depth_cap = 64;
  std::uint32_t min_precision = 8192;
  std::uint32_t max_precision = 1u << 20;
  std::vector<double> epsilons;    // per stage; empty means 2^-n
  std::vector<double> thresholds;  // per stage, kWeyl; empty means 1/n
  RowRule rule = RowRule::kPowMinusTwo;
  Execution exec = Execution::kSerial;
};

// Builds a fixed-point real that sits within every stage's radius of the
// stage target p_n / q_n without being any of them. Depths are calibrated
// per stage; the numerators are then chosen by exhaustive search over
// tuples whose radius balls have a common point, preferring the most
// nonzero numerators and breaking ties toward the lexicographically
// smallest tuple. With strict radii only a wide first-stage ball can
// reconcile distinct primes, which is why the two-stage strict runs use
// explicit epsilons; with all-zero numerators the construction still
// yields a valid, very small, positive value. After rounding to B bits
// every stage bound is re-verified exactly in fixed point.
ThetaConstruction build_theta(const std::vector<std::uint32_t>& primes,
                              double alpha, std::uint64_t seed,
                              CalibrationMode mode, DeltaMode delta_mode,
                              const BuildOptions& opts);

// Exact check that |value - p/q| < 2^floor(log2_delta) for the stage.
// The floor makes the compared radius representable; it only tightens
// the bound.
bool stage_bound_holds(const FixedPointReal& value, const Stage& stage);

// ((d mod q) * p mod q) / q as an exact rational, equal to frac(d p / q).
Rational frac_via_residue(std::uint32_t d_mod_q, std::uint32_t p,
                          std::uint32_t q);

// frac(d * theta): multiply, keep B fractional bits, return the top 53
// of them scaled to [0,1). Absolute error below 2^(bitlen(d) - B) from
// the fixed-point truncation plus 2^-53 from the 53-bit extraction.
// Requires bitlen(d) + 53 <= B, else InsufficientPrecision.
double frac_fixed_point(const mpz_class& d, const FixedPointReal& theta);

// Horizon at which the fractional parts of d_j * theta stop being
// uniformly tiny: roughly where d_j reaches 1/theta, plus slack, at
// least the default level cap, and never past what the precision can
// evaluate (B - 64 levels).
std::size_t default_stats_horizon(const ThetaConstruction& tc);

// Fractional parts {d_j theta} for j < horizon along seeded random
// paths. Path i draws its labels from derive_seed(seed, i).
std::vector<FracSeries> theta_path_series(const ThetaConstruction& tc,
                                          std::size_t paths,
                                          std::size_t horizon, double alpha,
                                          std::uint64_t seed, Execution exec);

}  // namespace pascalab
