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
//
// Timing comparison of the path-sampling kernels in serial and parallel
// execution. Both modes produce bit-identical results by construction;
// this target only reports wall-clock times and the speedup.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "pascalab/parallel.hpp"
#include "pascalab/stats.hpp"

namespace {

using pascalab::Execution;

double time_once(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void bench(const char* name, const std::function<void(Execution)>& fn) {
  const double serial = time_once([&] { fn(Execution::kSerial); });
  const double parallel = time_once([&] { fn(Execution::kParallel); });
  std::printf("%-24s %10.3f s %10.3f s %8.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  constexpr std::uint64_t kSeed = 7;
  std::printf("%-24s %12s %12s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  bench("divisibility_curve", [](Execution exec) {
    pascalab::divisibility_curve(3, 0.5, 400, {1000, 10000, 100000}, kSeed,
                                 exec);
  });

  bench("sweep_union_curve", [](Execution exec) {
    pascalab::sweep_union_curve(3, 0, 8, 20000, 0.5, kSeed,
                                pascalab::RowRule::kPowMinusTwo, exec);
  });

  bench("mixing_pair_estimate", [](Execution exec) {
    pascalab::mixing_pair_estimate(3, 1, 1, 2, 7, 20000, 0.5, kSeed,
                                   pascalab::RowRule::kPowMinusTwo, exec);
  });

  return 0;
}
