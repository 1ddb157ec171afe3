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

#include <array>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace pascalab {

using Rational = mpq_class;

struct Point2 {
  Rational x;
  Rational y;
};

// Axis-parallel right isosceles triangles, the only shapes the gasket
// construction ever produces. A lower triangle has its right angle at the
// min-min corner with legs toward +x and +y; an upper triangle has it at
// the max-max corner with legs toward -x and -y. Stored as the right-angle
// corner plus the leg length.
enum class Orientation { kLower, kUpper };

struct Triangle {
  Rational corner_x;
  Rational corner_y;
  Rational leg;
  Orientation orientation = Orientation::kLower;
};

// The three vertices, right-angle corner first.
std::array<Point2, 3> triangle_vertices(const Triangle& t);

Rational triangle_area(const Triangle& t);

// A line y = gamma (x - b) with gamma > 0. Lines of nonpositive slope are
// rejected as degenerate: they can run parallel to triangle edges and the
// projection bookkeeping below assumes transversality.
struct LineSpec {
  Rational gamma;
  Rational b;
};

// Splits a triangle into q^2 congruent cells: q(q+1)/2 children of the
// same orientation (kept by the gasket construction) and q(q-1)/2 of the
// opposite orientation (the removed voids). The children tile the parent
// exactly; tests assert the areas sum.
struct Subdivision {
  std::vector<Triangle> kept;     // same orientation as the parent
  std::vector<Triangle> removed;  // opposite orientation
};

Subdivision subdivide(const Triangle& t, std::uint32_t q);

// Length of the x-projection of the intersection of the triangle with the
// line. Exact; zero when they miss each other.
Rational line_segment_measure(const Triangle& t, const LineSpec& line);

// Projected measure retained after n subdivision rounds of the unit lower
// triangle, relative to the measure of the line inside the full triangle.
// Children whose intersection with the line has measure zero are dropped
// immediately; their descendants are subsets, so the pruning is exact.
// Throws DegenerateLine if the line misses the unit triangle entirely.
Rational gasket_line_ratio(std::uint32_t q, std::uint32_t n,
                           const LineSpec& line);

// Stage n of the construction for small n: every kept triangle, no
// pruning. Exponential in n; intended for tests and table dumps.
struct GasketStage {
  std::uint32_t q = 2;
  std::uint32_t n = 0;
  std::vector<Triangle> kept;
};

GasketStage expand_stage(std::uint32_t q, std::uint32_t n);

// Intersection of the line with the hypotenuse of the first removed void
// of the q=2 construction, the segment from (0,1/2) to (1/2,0). Throws
// OutOfRange if the line crosses its extension outside the segment.
Point2 void_hypotenuse_intersection(const Rational& gamma, const Rational& b);

// Lower bound estimate for the per-round fraction of line measure lost to
// the removed voids: minimizes f(b) = 1 - (stage-1 ratio) over a uniform
// grid of intercepts b in [-eps, (1-eps)/2] with eps = min(1/4, 1/(4
// gamma)). For q=2 the stage-1 loss is exactly the measure falling into
// the single central void; for larger q it is the union over all first
// round voids. The intercept range keeps the line crossing the triangle
// for every grid point, so the ratio denominator never vanishes.
Rational eta_estimate(const Rational& gamma, std::uint32_t q,
                      std::uint32_t grid_size);

}  // namespace pascalab
