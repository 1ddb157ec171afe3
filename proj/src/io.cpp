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

#include "pascalab/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "pascalab/errors.hpp"
#include "pascalab/version.hpp"

namespace pascalab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string rational_decimal(const Rational& r) {
  mpf_class f(r, 256);
  char buf[64];
  gmp_snprintf(buf, sizeof buf, "%.18Fg", f.get_mpf_t());
  return buf;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) {
    throw InvalidArgs("empty rational literal");
  }
  const std::size_t slash = text.find('/');
  const std::size_t dot = text.find('.');
  try {
    if (slash != std::string::npos) {
      const mpz_class num(text.substr(0, slash));
      const mpz_class den(text.substr(slash + 1));
      if (den == 0) {
        throw InvalidArgs("zero denominator");
      }
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    if (dot != std::string::npos) {
      std::string head = text.substr(0, dot);
      const std::string tail = text.substr(dot + 1);
      bool negative = false;
      if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
        negative = head[0] == '-';
        head = head.substr(1);
      }
      const mpz_class whole(head.empty() ? "0" : head);
      const mpz_class frac(tail.empty() ? "0" : tail);
      mpz_class scale = 1;
      for (std::size_t i = 0; i < tail.size(); ++i) {
        scale *= 10;
      }
      Rational r(whole * scale + frac, scale);
      r.canonicalize();
      if (negative) {
        r = -r;
      }
      return r;
    }
    Rational r{mpz_class(text)};
    return r;
  } catch (const std::invalid_argument&) {
    throw InvalidArgs("unparsable rational literal: " + text);
  }
}

namespace {

void append_joined(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

std::string write_csv(const RunMeta& meta,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  out += "# version=";
  out += kVersion;
  out += '\n';
  out += "# experiment=" + meta.experiment + '\n';
  out += "# seed=" + std::to_string(meta.seed) + '\n';
  for (const auto& kv : meta.config) {
    out += "# " + kv.first + "=" + kv.second + '\n';
  }
  append_joined(out, header);
  for (const auto& row : rows) {
    append_joined(out, row);
  }
  return out;
}

nlohmann::ordered_json meta_json(const RunMeta& meta) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["experiment"] = meta.experiment;
  j["seed"] = meta.seed;
  for (const auto& kv : meta.config) {
    j["config"][kv.first] = kv.second;
  }
  return j;
}

void write_artifact(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw Error("cannot open output file: " + path);
  }
  f << content;
  if (!f) {
    throw Error("failed writing output file: " + path);
  }
}

}  // namespace pascalab
