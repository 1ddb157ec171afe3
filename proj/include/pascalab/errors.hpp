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

#include <stdexcept>
#include <string>

namespace pascalab {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller passed arguments that violate a documented precondition.
struct InvalidArgs : Error {
  explicit InvalidArgs(const std::string& msg) : Error(msg) {}
};

// An index or level is outside the valid range of the object queried.
struct OutOfRange : Error {
  explicit OutOfRange(const std::string& msg) : Error(msg) {}
};

// The requested line is parallel to an edge family or otherwise unusable.
struct DegenerateLine : Error {
  explicit DegenerateLine(const std::string& msg) : Error(msg) {}
};

// A stage-depth search exhausted its budget without meeting the target.
struct CalibrationFailed : Error {
  explicit CalibrationFailed(const std::string& msg) : Error(msg) {}
};

// A computation would need more fixed-point bits than the configured cap.
struct PrecisionOverflow : Error {
  explicit PrecisionOverflow(const std::string& msg) : Error(msg) {}
};

// A value does not carry enough fractional bits for the requested
// evaluation.
struct InsufficientPrecision : Error {
  explicit InsufficientPrecision(const std::string& msg) : Error(msg) {}
};

}  // namespace pascalab
