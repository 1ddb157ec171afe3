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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pascalab/parallel.hpp"
#include "pascalab/pascal_path.hpp"

namespace pascalab {

// Rows probed at stage j of the residue-class experiments. The natural
// family is rows q^j - 2, where the residues follow the alternating
// closed form; rows q^j (all interior entries divisible by q) are kept
// selectable for comparison runs.
enum class RowRule { kPowMinusTwo, kPow };

// Row index for stage j under the rule. Throws OutOfRange on uint64
// overflow.
std::uint64_t probe_row(std::uint32_t q, std::uint32_t stage, RowRule rule);

// Fractional parts {d_j theta} along one path, values in [0,1).
struct FracSeries {
  std::vector<double> values;
};

// Mean of |e^{2 pi i t} - 1| = 2 |sin(pi t)| over the first n entries.
double weyl_average(const FracSeries& s, std::size_t n);

// Counts of entries falling in [i/bins, (i+1)/bins).
std::vector<std::uint64_t> arc_histogram(const FracSeries& s,
                                         std::uint32_t bins);

// True iff every circular arc of length eps contains an entry, i.e. the
// largest circular gap between consecutive sorted entries is at most eps.
bool epsilon_dense(const FracSeries& s, double eps);

// Fraction of levels j in {0, ..., n-1} whose binomial value is divisible
// by q. A length-L prefix yields L+1 levels (the root counts), so n may
// be as large as L+1.
double divisible_fraction(const PathPrefix& prefix, std::uint32_t q,
                          std::size_t n);

// Mean and sample standard deviation of divisible_fraction over seeded
// random paths, evaluated at each checkpoint horizon.
struct DivisibilityCurve {
  std::vector<std::size_t> checkpoints;
  std::vector<double> mean;
  std::vector<double> sd;
};

DivisibilityCurve divisibility_curve(std::uint32_t q, double alpha,
                                     std::size_t paths,
                                     const std::vector<std::size_t>& checkpoints,
                                     std::uint64_t seed, Execution exec);

// Residue classes met by one path at the probe rows of stages 1..max_stage.
// Each stage meets exactly one class, so the matrix view hit(stage, p)
// has one true entry per row.
struct HitMatrix {
  std::uint32_t q = 2;
  RowRule rule = RowRule::kPowMinusTwo;
  std::vector<std::uint32_t> stage_class;  // class met at stage j+1

  bool hit(std::uint32_t stage, std::uint32_t p) const {
    return stage_class.at(stage - 1) == p;
  }
};

HitMatrix residue_hit_levels(const PathPrefix& prefix, std::uint32_t q,
                             std::uint32_t max_stage, RowRule rule);

// Monte Carlo estimate of the measure of paths meeting class p at some
// stage r <= R, for every R' = 1..R in one run (the union grows with R,
// so the estimates are cumulative fractions of first hits).
std::vector<double> sweep_union_curve(std::uint32_t q, std::uint32_t p,
                                      std::uint32_t R, std::size_t samples,
                                      double alpha, std::uint64_t seed,
                                      RowRule rule, Execution exec);

double sweep_out_mass(std::uint32_t q, std::uint32_t p, std::uint32_t R,
                      std::size_t samples, double alpha, std::uint64_t seed,
                      RowRule rule, Execution exec);

// Joint and marginal hit frequencies for one class pair at two stages,
// with the standard error of the discrepancy D = I(joint) - I(marginal)/q
// so callers can form normal-approximation bands.
struct MixingEstimate {
  double joint = 0;
  double marginal = 0;
  double diff_mean = 0;    // mean of D
  double diff_stderr = 0;  // standard error of the mean of D
  std::size_t samples = 0;
};

MixingEstimate mixing_pair_estimate(std::uint32_t q, std::uint32_t p,
                                    std::uint32_t r, std::uint32_t m,
                                    std::uint32_t n, std::size_t samples,
                                    double alpha, std::uint64_t seed,
                                    RowRule rule, Execution exec);

// Probability mass of each residue class on row q^pow - 2 under the
// binomial(row, alpha) column distribution, plus the largest single
// column mass. The class masses differ pairwise by at most six times the
// peak mass; tests assert that bound. Row must stay enumerable (<= 1e5).
struct RowClassMasses {
  std::vector<double> mass;  // indexed by residue class
  double max_pmf = 0;
};

RowClassMasses row_class_masses(std::uint32_t q, std::uint32_t pow,
                                double alpha);

double row_class_mass(std::uint32_t q, std::uint32_t pow, double alpha,
                      std::uint32_t p);

}  // namespace pascalab
