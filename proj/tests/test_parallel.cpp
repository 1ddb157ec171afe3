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

#include "pascalab/parallel.hpp"
#include "pascalab/rng.hpp"
#include "pascalab/stats.hpp"
#include "pascalab/theta_lab.hpp"

namespace pascalab {
namespace {

TEST_CASE("replica seeds are the raw generator stream") {
  SplitMix64 rng(12345u);
  for (std::uint64_t i = 0; i < 16; ++i) {
    CHECK(derive_seed(12345u, i) == rng.next());
  }
}

TEST_CASE("serial and parallel replicas are bit-identical") {
  auto work = [](std::size_t i) -> std::vector<double> {
    SplitMix64 rng(derive_seed(777u, i));
    std::vector<double> vals(40);
    double acc = 0;
    for (double& v : vals) {
      acc += rng.next_unit();
      v = acc / 3.0;
    }
    return vals;
  };
  const auto serial = run_replicas(200, Execution::kSerial, work);
  const auto parallel = run_replicas(200, Execution::kParallel, work);
  CHECK(serial == parallel);
}

TEST_CASE("statistics kernels do not depend on the schedule") {
  const std::vector<std::size_t> checkpoints{50, 200, 800};
  const DivisibilityCurve ds = divisibility_curve(
      3, 0.5, 300, checkpoints, 2024u, Execution::kSerial);
  const DivisibilityCurve dp = divisibility_curve(
      3, 0.5, 300, checkpoints, 2024u, Execution::kParallel);
  CHECK(ds.mean == dp.mean);
  CHECK(ds.sd == dp.sd);

  const auto ss = sweep_union_curve(3, 0, 6, 2000, 0.5, 2024u,
                                    RowRule::kPowMinusTwo,
                                    Execution::kSerial);
  const auto sp = sweep_union_curve(3, 0, 6, 2000, 0.5, 2024u,
                                    RowRule::kPowMinusTwo,
                                    Execution::kParallel);
  CHECK(ss == sp);

  const MixingEstimate ms =
      mixing_pair_estimate(3, 2, 1, 2, 6, 3000, 0.5, 2024u,
                           RowRule::kPowMinusTwo, Execution::kSerial);
  const MixingEstimate mp =
      mixing_pair_estimate(3, 2, 1, 2, 6, 3000, 0.5, 2024u,
                           RowRule::kPowMinusTwo, Execution::kParallel);
  CHECK(ms.joint == mp.joint);
  CHECK(ms.marginal == mp.marginal);
  CHECK(ms.diff_mean == mp.diff_mean);
  CHECK(ms.diff_stderr == mp.diff_stderr);
}

TEST_CASE("path series kernels do not depend on the schedule") {
  FixedPointReal theta;
  theta.precision = 512;
  theta.bits = (mpz_class(1) << 510) + 12345;  // about one quarter
  ThetaConstruction tc;
  tc.value = theta;
  const auto serial =
      theta_path_series(tc, 64, 300, 0.4, 555u, Execution::kSerial);
  const auto parallel =
      theta_path_series(tc, 64, 300, 0.4, 555u, Execution::kParallel);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].values == parallel[i].values);
  }
}

TEST_CASE("calibration counts reduce identically in both modes") {
  CalibrationConfig cs;
  cs.alpha = 0.5;
  cs.seed = 31u;
  cs.samples = 2000;
  cs.depth_max = 16;
  cs.exec = Execution::kSerial;
  CalibrationConfig cp = cs;
  cp.exec = Execution::kParallel;
  const CalibrationResult a = calibrate_R(3, 0.6, CalibrationMode::kWeyl, cs);
  const CalibrationResult b = calibrate_R(3, 0.6, CalibrationMode::kWeyl, cp);
  CHECK(a.depth == b.depth);
  CHECK(a.achieved_mass == b.achieved_mass);
  cs.depth_max = 10;  // keep the deepest sweep row at 3^10
  cp.depth_max = 10;
  const CalibrationResult c =
      calibrate_R(3, 0.8, CalibrationMode::kSweep, cs);
  const CalibrationResult d =
      calibrate_R(3, 0.8, CalibrationMode::kSweep, cp);
  CHECK(c.depth == d.depth);
  CHECK(c.achieved_mass == d.achieved_mass);
}

}  // namespace
}  // namespace pascalab
