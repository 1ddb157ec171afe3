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
#include <vector>

namespace pascalab {

enum class Execution { kSerial, kParallel };

// Runs fn(i) for i in [0, count) and collects the results in order.
// Each replica derives its own RNG state from its index, so the parallel
// schedule cannot perturb the values and both modes return identical
// vectors. Reductions over the result happen serially in the caller,
// which keeps floating point sums deterministic as well.
template <class Fn>
auto run_replicas(std::size_t count, Execution mode, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using T = decltype(fn(std::size_t{0}));
  std::vector<T> out(count);
  if (mode == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = fn(i);
    }
  }
  return out;
}

}  // namespace pascalab
