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
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pascalab/gasket.hpp"

namespace pascalab {

// Identification block embedded in every artifact so a run can be
// replayed from the file alone: tool version, experiment name, seed, and
// the full flag set in the order it was resolved.
struct RunMeta {
  std::string experiment;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
};

// Shortest decimal that round-trips the double (printf %.17g), so equal
// configs give byte-identical files.
std::string format_double(double v);

// Decimal expansion of an exact rational, 18 significant digits.
std::string rational_decimal(const Rational& r);

// Parses "n", "n/d", or a plain decimal like "0.25" into an exact
// rational. Throws InvalidArgs on anything else or a zero denominator.
Rational parse_rational(const std::string& text);

// CSV with `# key=value` identification lines, then a header row, then
// the data rows. Returned as one string for write_artifact.
std::string write_csv(const RunMeta& meta,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// The identification block as a JSON object {version, experiment, seed,
// config}. Ordered so reruns serialize byte-identically.
nlohmann::ordered_json meta_json(const RunMeta& meta);

// Writes to the path, or to stdout when the path is empty.
void write_artifact(const std::string& path, const std::string& content);

}  // namespace pascalab
