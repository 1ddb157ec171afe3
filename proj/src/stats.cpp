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

#include "pascalab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "pascalab/errors.hpp"
#include "pascalab/residue_engine.hpp"
#include "pascalab/rng.hpp"

namespace pascalab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

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

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgs("alpha must lie strictly between 0 and 1");
  }
}

std::vector<std::uint64_t> probe_rows(std::uint32_t q, std::uint32_t max_stage,
                                      RowRule rule) {
  std::vector<std::uint64_t> rows(max_stage);
  for (std::uint32_t j = 1; j <= max_stage; ++j) {
    rows[j - 1] = probe_row(q, j, rule);
  }
  return rows;
}

}  // namespace

std::uint64_t probe_row(std::uint32_t q, std::uint32_t stage, RowRule rule) {
  if (q < 2) {
    throw InvalidArgs("modulus must be at least 2");
  }
  if (stage == 0) {
    throw InvalidArgs("stages are numbered from 1");
  }
  const std::uint64_t power = checked_pow(q, stage);
  return rule == RowRule::kPowMinusTwo ? power - 2 : power;
}

double weyl_average(const FracSeries& s, std::size_t n) {
  if (n == 0 || n > s.values.size()) {
    throw InvalidArgs("horizon must be positive and within the series");
  }
  double sum = 0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += 2.0 * std::fabs(std::sin(kPi * s.values[j]));
  }
  return sum / static_cast<double>(n);
}

std::vector<std::uint64_t> arc_histogram(const FracSeries& s,
                                         std::uint32_t bins) {
  if (bins == 0) {
    throw InvalidArgs("need at least one bin");
  }
  std::vector<std::uint64_t> counts(bins, 0);
  for (double t : s.values) {
    auto idx = static_cast<std::size_t>(t * bins);
    if (idx >= bins) idx = bins - 1;
    ++counts[idx];
  }
  return counts;
}

bool epsilon_dense(const FracSeries& s, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw InvalidArgs("eps must lie in (0, 1]");
  }
  if (s.values.empty()) return false;
  std::vector<double> pts(s.values);
  std::sort(pts.begin(), pts.end());
  // Wrap-around gap. Subtracting the spread from 1 keeps the common
  // boundary case, points spaced exactly eps apart, from rounding up.
  double largest = 1.0 - (pts.back() - pts.front());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    largest = std::max(largest, pts[i] - pts[i - 1]);
  }
  return largest <= eps;
}

double divisible_fraction(const PathPrefix& prefix, std::uint32_t q,
                          std::size_t n) {
  if (n == 0) {
    throw InvalidArgs("horizon must be positive");
  }
  // Levels run 0..length, one more than the label count, since the root
  // vertex counts as level 0.
  if (n > prefix.size() + 1) {
    throw InvalidArgs("horizon exceeds the level count of the prefix");
  }
  ResidueOdometer odo(q);
  std::size_t hits = odo.residue() == 0 ? 1 : 0;
  for (std::size_t j = 1; j < n; ++j) {
    odo.step(prefix[j - 1]);
    if (odo.residue() == 0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

DivisibilityCurve divisibility_curve(std::uint32_t q, double alpha,
                                     std::size_t paths,
                                     const std::vector<std::size_t>& checkpoints,
                                     std::uint64_t seed, Execution exec) {
  require_alpha(alpha);
  if (paths == 0 || checkpoints.empty()) {
    throw InvalidArgs("need at least one path and one checkpoint");
  }
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 ||
        (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw InvalidArgs("checkpoints must be positive and increasing");
    }
  }
  auto per_path = run_replicas(
      paths, exec, [&](std::size_t i) -> std::vector<double> {
        SplitMix64 rng(derive_seed(seed, i));
        ResidueOdometer odo(q);
        std::vector<double> vals(checkpoints.size());
        std::size_t hits = 0;
        std::size_t next = 0;
        for (std::size_t level = 0; next < checkpoints.size(); ++level) {
          if (level > 0) {
            odo.step(rng.next_bernoulli(alpha) ? 1 : 0);
          }
          if (odo.residue() == 0) ++hits;
          while (next < checkpoints.size() &&
                 checkpoints[next] == level + 1) {
            vals[next] = static_cast<double>(hits) /
                         static_cast<double>(checkpoints[next]);
            ++next;
          }
        }
        return vals;
      });
  DivisibilityCurve curve;
  curve.checkpoints = checkpoints;
  curve.mean.resize(checkpoints.size());
  curve.sd.resize(checkpoints.size());
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    double sum = 0;
    for (const auto& vals : per_path) sum += vals[c];
    const double mean = sum / static_cast<double>(paths);
    double ss = 0;
    for (const auto& vals : per_path) {
      const double d = vals[c] - mean;
      ss += d * d;
    }
    curve.mean[c] = mean;
    curve.sd[c] = paths > 1 ? std::sqrt(ss / static_cast<double>(paths - 1))
                            : 0.0;
  }
  return curve;
}

HitMatrix residue_hit_levels(const PathPrefix& prefix, std::uint32_t q,
                             std::uint32_t max_stage, RowRule rule) {
  if (max_stage == 0) {
    throw InvalidArgs("need at least one stage");
  }
  const auto rows = probe_rows(q, max_stage, rule);
  if (rows.back() > prefix.size()) {
    throw OutOfRange("prefix too short for the deepest probe row");
  }
  HitMatrix hm;
  hm.q = q;
  hm.rule = rule;
  hm.stage_class.resize(max_stage);
  ResidueOdometer odo(q);
  std::uint32_t stage = 0;
  for (std::uint64_t level = 0; stage < max_stage; ++level) {
    if (level > 0) {
      odo.step(prefix[level - 1]);
    }
    while (stage < max_stage && rows[stage] == level) {
      hm.stage_class[stage] = odo.residue();
      ++stage;
    }
  }
  return hm;
}

std::vector<double> sweep_union_curve(std::uint32_t q, std::uint32_t p,
                                      std::uint32_t R, std::size_t samples,
                                      double alpha, std::uint64_t seed,
                                      RowRule rule, Execution exec) {
  require_alpha(alpha);
  if (p >= q) {
    throw InvalidArgs("residue class must be below the modulus");
  }
  if (R == 0 || samples == 0) {
    throw InvalidArgs("need at least one stage and one sample");
  }
  const auto rows = probe_rows(q, R, rule);
  auto first_hit = run_replicas(
      samples, exec, [&](std::size_t i) -> std::uint32_t {
        SplitMix64 rng(derive_seed(seed, i));
        ResidueOdometer odo(q);
        std::uint64_t level = 0;
        for (std::uint32_t stage = 1; stage <= R; ++stage) {
          const std::uint64_t target = rows[stage - 1];
          while (level < target) {
            odo.step(rng.next_bernoulli(alpha) ? 1 : 0);
            ++level;
          }
          if (odo.residue() == p) return stage;
        }
        return 0;
      });
  std::vector<std::uint64_t> counts(R + 1, 0);
  for (std::uint32_t f : first_hit) ++counts[f];
  std::vector<double> curve(R);
  std::uint64_t cum = 0;
  for (std::uint32_t stage = 1; stage <= R; ++stage) {
    cum += counts[stage];
    curve[stage - 1] =
        static_cast<double>(cum) / static_cast<double>(samples);
  }
  return curve;
}

double sweep_out_mass(std::uint32_t q, std::uint32_t p, std::uint32_t R,
                      std::size_t samples, double alpha, std::uint64_t seed,
                      RowRule rule, Execution exec) {
  return sweep_union_curve(q, p, R, samples, alpha, seed, rule, exec).back();
}

MixingEstimate mixing_pair_estimate(std::uint32_t q, std::uint32_t p,
                                    std::uint32_t r, std::uint32_t m,
                                    std::uint32_t n, std::size_t samples,
                                    double alpha, std::uint64_t seed,
                                    RowRule rule, Execution exec) {
  require_alpha(alpha);
  if (p >= q || r >= q) {
    throw InvalidArgs("residue classes must be below the modulus");
  }
  if (m == 0 || m >= n) {
    throw InvalidArgs("stage order must satisfy 1 <= m < n");
  }
  if (samples < 2) {
    throw InvalidArgs("need at least two samples for an error bar");
  }
  const std::uint64_t row_m = probe_row(q, m, rule);
  const std::uint64_t row_n = probe_row(q, n, rule);
  auto flags = run_replicas(
      samples, exec, [&](std::size_t i) -> std::uint8_t {
        SplitMix64 rng(derive_seed(seed, i));
        ResidueOdometer odo(q);
        std::uint64_t level = 0;
        while (level < row_m) {
          odo.step(rng.next_bernoulli(alpha) ? 1 : 0);
          ++level;
        }
        const bool early = odo.residue() == r;
        while (level < row_n) {
          odo.step(rng.next_bernoulli(alpha) ? 1 : 0);
          ++level;
        }
        const bool late = odo.residue() == p;
        return static_cast<std::uint8_t>((early ? 1 : 0) | (late ? 2 : 0));
      });
  std::uint64_t count_early = 0;
  std::uint64_t count_joint = 0;
  for (std::uint8_t f : flags) {
    if (f & 1) {
      ++count_early;
      if (f & 2) ++count_joint;
    }
  }
  const double S = static_cast<double>(samples);
  MixingEstimate est;
  est.samples = samples;
  est.joint = static_cast<double>(count_joint) / S;
  est.marginal = static_cast<double>(count_early) / S;
  est.diff_mean = est.joint - est.marginal / q;
  // Per-sample discrepancy D takes value 1 - 1/q on joint hits, -1/q on
  // early-only hits, 0 otherwise; spell out its second moment.
  const double inv_q = 1.0 / q;
  const double sum_d =
      static_cast<double>(count_joint) - static_cast<double>(count_early) * inv_q;
  const double sum_d2 =
      static_cast<double>(count_joint) * (1.0 - inv_q) * (1.0 - inv_q) +
      static_cast<double>(count_early - count_joint) * inv_q * inv_q;
  const double var = (sum_d2 - sum_d * sum_d / S) / (S - 1.0);
  est.diff_stderr = var > 0 ? std::sqrt(var / S) : 0.0;
  return est;
}

RowClassMasses row_class_masses(std::uint32_t q, std::uint32_t pow,
                                double alpha) {
  require_alpha(alpha);
  const std::uint64_t row = probe_row(q, pow, RowRule::kPowMinusTwo);
  if (row > 100000) {
    throw OutOfRange("row too long to enumerate");
  }
  if (!is_prime(q)) {
    throw InvalidArgs("modulus must be prime");
  }
  const auto N = static_cast<std::size_t>(row);
  // Column distribution along the row: binomial(N, alpha) evaluated by
  // the ratio recurrence outward from the mode, then normalized. Far
  // tails underflow to zero, which is harmless at these scales.
  std::vector<long double> pmf(N + 1, 0.0L);
  auto mode = static_cast<std::size_t>((N + 1) * alpha);
  if (mode > N) mode = N;
  pmf[mode] = 1.0L;
  const long double ratio = static_cast<long double>(alpha) /
                            (1.0L - static_cast<long double>(alpha));
  for (std::size_t k = mode; k < N; ++k) {
    pmf[k + 1] = pmf[k] * static_cast<long double>(N - k) /
                 static_cast<long double>(k + 1) * ratio;
  }
  for (std::size_t k = mode; k > 0; --k) {
    pmf[k - 1] = pmf[k] * static_cast<long double>(k) /
                 static_cast<long double>(N - k + 1) / ratio;
  }
  long double total = 0.0L;
  for (long double v : pmf) total += v;
  std::vector<long double> acc(q, 0.0L);
  for (std::size_t k = 0; k <= N; ++k) {
    acc[lucas_residue(row, k, q)] += pmf[k];
  }
  RowClassMasses out;
  out.mass.resize(q);
  for (std::uint32_t c = 0; c < q; ++c) {
    out.mass[c] = static_cast<double>(acc[c] / total);
  }
  out.max_pmf = static_cast<double>(pmf[mode] / total);
  return out;
}

double row_class_mass(std::uint32_t q, std::uint32_t pow, double alpha,
                      std::uint32_t p) {
  if (p >= q) {
    throw InvalidArgs("residue class must be below the modulus");
  }
  return row_class_masses(q, pow, alpha).mass[p];
}

}  // namespace pascalab
