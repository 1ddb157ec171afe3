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

#include "pascalab/gasket.hpp"

#include <algorithm>
#include <utility>

#include "pascalab/errors.hpp"

namespace pascalab {

namespace {

void require_slope(const Rational& gamma) {
  if (gamma <= 0) {
    throw DegenerateLine("line slope must be positive");
  }
}

void require_q(std::uint32_t q) {
  if (q < 2) {
    throw InvalidArgs("subdivision order must be at least 2");
  }
}

}  // namespace

std::array<Point2, 3> triangle_vertices(const Triangle& t) {
  const Rational sign = t.orientation == Orientation::kLower ? 1 : -1;
  return {Point2{t.corner_x, t.corner_y},
          Point2{t.corner_x + sign * t.leg, t.corner_y},
          Point2{t.corner_x, t.corner_y + sign * t.leg}};
}

Rational triangle_area(const Triangle& t) {
  return t.leg * t.leg / 2;
}

Subdivision subdivide(const Triangle& t, std::uint32_t q) {
  require_q(q);
  const Rational h = t.leg / q;
  const int sign = t.orientation == Orientation::kLower ? 1 : -1;
  const Orientation flipped = t.orientation == Orientation::kLower
                                  ? Orientation::kUpper
                                  : Orientation::kLower;
  Subdivision out;
  out.kept.reserve(static_cast<std::size_t>(q) * (q + 1) / 2);
  out.removed.reserve(static_cast<std::size_t>(q) * (q - 1) / 2);
  for (std::uint32_t i = 0; i < q; ++i) {
    for (std::uint32_t j = 0; i + j < q; ++j) {
      out.kept.push_back(Triangle{t.corner_x + sign * int(i) * h,
                                  t.corner_y + sign * int(j) * h, h,
                                  t.orientation});
      if (i + j < q - 1) {
        out.removed.push_back(Triangle{t.corner_x + sign * int(i + 1) * h,
                                       t.corner_y + sign * int(j + 1) * h, h,
                                       flipped});
      }
    }
  }
  return out;
}

Rational line_segment_measure(const Triangle& t, const LineSpec& line) {
  require_slope(line.gamma);
  // The line is y = gamma (x - b). For a lower triangle the x interval of
  // the intersection is cut below by the corner and by the leg y = cy,
  // and above by the hypotenuse; for an upper triangle the roles swap.
  const Rational on_leg = t.corner_y / line.gamma + line.b;
  Rational lo;
  Rational hi;
  if (t.orientation == Orientation::kLower) {
    lo = std::max(t.corner_x, on_leg);
    hi = (t.corner_x + t.corner_y + t.leg + line.gamma * line.b) /
         (1 + line.gamma);
  } else {
    lo = (t.corner_x + t.corner_y - t.leg + line.gamma * line.b) /
         (1 + line.gamma);
    hi = std::min(t.corner_x, on_leg);
  }
  if (hi <= lo) return Rational(0);
  return hi - lo;
}

Rational gasket_line_ratio(std::uint32_t q, std::uint32_t n,
                           const LineSpec& line) {
  require_q(q);
  const Triangle unit{Rational(0), Rational(0), Rational(1),
                      Orientation::kLower};
  const Rational base = line_segment_measure(unit, line);
  if (base == 0) {
    throw DegenerateLine("line misses the unit triangle");
  }
  // Triangles the line misses are dropped on sight. Their children are
  // subsets, so no measure is lost and the frontier stays proportional
  // to the number of cells the line actually crosses.
  std::vector<Triangle> frontier{unit};
  for (std::uint32_t round = 0; round < n; ++round) {
    std::vector<Triangle> next;
    next.reserve(frontier.size() * 2);
    for (const Triangle& t : frontier) {
      Subdivision sub = subdivide(t, q);
      for (Triangle& child : sub.kept) {
        if (line_segment_measure(child, line) > 0) {
          next.push_back(std::move(child));
        }
      }
    }
    frontier = std::move(next);
  }
  Rational total(0);
  for (const Triangle& t : frontier) {
    total += line_segment_measure(t, line);
  }
  return total / base;
}

GasketStage expand_stage(std::uint32_t q, std::uint32_t n) {
  require_q(q);
  const double kept_per_round = 0.5 * q * (q + 1);
  double projected = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    projected *= kept_per_round;
    if (projected > 1e6) {
      throw InvalidArgs("stage too large to expand without pruning");
    }
  }
  GasketStage stage;
  stage.q = q;
  stage.n = n;
  stage.kept = {Triangle{Rational(0), Rational(0), Rational(1),
                         Orientation::kLower}};
  for (std::uint32_t round = 0; round < n; ++round) {
    std::vector<Triangle> next;
    next.reserve(stage.kept.size() * static_cast<std::size_t>(kept_per_round));
    for (const Triangle& t : stage.kept) {
      Subdivision sub = subdivide(t, q);
      for (Triangle& child : sub.kept) {
        next.push_back(std::move(child));
      }
    }
    stage.kept = std::move(next);
  }
  return stage;
}

Point2 void_hypotenuse_intersection(const Rational& gamma, const Rational& b) {
  require_slope(gamma);
  // First removed void of the q=2 subdivision: hypotenuse from (0, 1/2)
  // to (1/2, 0), the segment x + y = 1/2 with x in [0, 1/2].
  const Rational x = (Rational(1, 2) + gamma * b) / (1 + gamma);
  if (x < 0 || x > Rational(1, 2)) {
    throw OutOfRange("line meets the hypotenuse outside the segment");
  }
  return Point2{x, Rational(1, 2) - x};
}

Rational eta_estimate(const Rational& gamma, std::uint32_t q,
                      std::uint32_t grid_size) {
  require_slope(gamma);
  require_q(q);
  if (grid_size < 2) {
    throw InvalidArgs("grid needs at least two intercepts");
  }
  const Rational quarter_over_gamma = 1 / (4 * gamma);
  const Rational eps = std::min(Rational(1, 4), quarter_over_gamma);
  const Rational lo = -eps;
  const Rational hi = (1 - eps) / 2;
  Rational best(-1);
  for (std::uint32_t i = 0; i < grid_size; ++i) {
    const Rational b = lo + (hi - lo) * int(i) / int(grid_size - 1);
    const Rational lost = 1 - gasket_line_ratio(q, 1, LineSpec{gamma, b});
    if (best < 0 || lost < best) {
      best = lost;
    }
  }
  return best;
}

}  // namespace pascalab
