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
// Experiment runner. Every subcommand validates its flags, runs one
// experiment, and writes a CSV or JSON artifact that embeds the full
// resolved configuration, so a run can be replayed from the file alone.
// Exit codes: 0 success, 1 failed internal assertion or exhausted
// search, 2 configuration error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <gmpxx.h>
#include <json.hpp>

#include "pascalab/diophantine.hpp"
#include "pascalab/errors.hpp"
#include "pascalab/gasket.hpp"
#include "pascalab/io.hpp"
#include "pascalab/residue_engine.hpp"
#include "pascalab/stats.hpp"
#include "pascalab/theta_lab.hpp"
#include "pascalab/version.hpp"

namespace {

using pascalab::Rational;
using pascalab::RunMeta;

struct AssertionFailure {
  std::string message;
};

struct CommonFlags {
  double alpha = 0.5;
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::string out;
  std::string format = "csv";
  std::string exec = "parallel";
  std::string row_rule = "pow-minus-two";
};

pascalab::Execution parse_exec(const std::string& s) {
  if (s == "serial") return pascalab::Execution::kSerial;
  if (s == "parallel") return pascalab::Execution::kParallel;
  throw pascalab::InvalidArgs("exec must be serial or parallel, got " + s);
}

pascalab::RowRule parse_row_rule(const std::string& s) {
  if (s == "pow-minus-two") return pascalab::RowRule::kPowMinusTwo;
  if (s == "pow") return pascalab::RowRule::kPow;
  throw pascalab::InvalidArgs("row-rule must be pow-minus-two or pow, got " +
                              s);
}

std::string u64_str(std::uint64_t v) { return std::to_string(v); }

// Emits the table as CSV or as a JSON object with the same columns.
void emit_table(const RunMeta& meta, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows,
                const std::string& format, const std::string& out) {
  if (format == "csv") {
    pascalab::write_artifact(out, pascalab::write_csv(meta, header, rows));
    return;
  }
  if (format == "json") {
    nlohmann::ordered_json j = pascalab::meta_json(meta);
    j["columns"] = header;
    j["rows"] = rows;
    pascalab::write_artifact(out, j.dump(2) + "\n");
    return;
  }
  throw pascalab::InvalidArgs("format must be csv or json, got " + format);
}

std::vector<std::string> stats_header() {
  return {"experiment", "seed",      "alpha", "q",
          "n_or_horizon", "statistic", "value", "stderr"};
}

std::vector<std::string> stats_row(const RunMeta& meta, double alpha,
                                   std::uint32_t q, std::uint64_t n_or_horizon,
                                   const std::string& statistic, double value,
                                   const std::string& stderr_text) {
  return {meta.experiment,
          u64_str(meta.seed),
          pascalab::format_double(alpha),
          std::to_string(q),
          u64_str(n_or_horizon),
          statistic,
          pascalab::format_double(value),
          stderr_text};
}

// row-check: the alternating closed form on row q^n - 2 against a row
// built by the Pascal recurrence mod q, plus the two-hits-per-window
// property. Prints one PASS line with the verified entry count.
int run_row_check(std::uint32_t q, std::uint32_t n) {
  if (!pascalab::is_prime(q)) {
    throw pascalab::InvalidArgs("row-check needs a prime --q");
  }
  if (n == 0) throw pascalab::InvalidArgs("row-check needs --n >= 1");
  std::uint64_t target = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (target > (1ull << 40) / q) {
      throw pascalab::InvalidArgs("row q^n - 2 is too large to enumerate");
    }
    target *= q;
  }
  target -= 2;

  std::vector<std::uint32_t> row{1};
  for (std::uint64_t r = 1; r <= target; ++r) {
    row.push_back(1);
    for (std::size_t k = row.size() - 2; k > 0; --k) {
      row[k] = (row[k] + row[k - 1]) % q;
    }
  }
  std::uint64_t checked = 0;
  for (std::uint64_t k = 0; k <= target; ++k) {
    const std::uint32_t formula = pascalab::row_formula_residue(q, n, k);
    const std::uint32_t direct = pascalab::lucas_residue(target, k, q);
    if (formula != row[k] || direct != row[k]) {
      std::printf("FAIL row-check: mismatch at k=%llu (formula %u, "
                  "recurrence %u, digit product %u)\n",
                  static_cast<unsigned long long>(k), formula, row[k], direct);
      return 1;
    }
    ++checked;
  }
  std::uint64_t windows = 0;
  if (target >= 2ull * q - 1) {
    for (std::uint64_t k = 0; k + 2 * q - 1 <= target; ++k) {
      for (std::uint32_t p = 0; p < q; ++p) {
        if (pascalab::window_residue_count(q, n, k, p) != 2) {
          std::printf("FAIL row-check: window at k=%llu hits class %u a "
                      "number of times other than 2\n",
                      static_cast<unsigned long long>(k), p);
          return 1;
        }
        ++windows;
      }
    }
  }
  std::printf("PASS row-check: verified %llu entries on row %llu and %llu "
              "window counts\n",
              static_cast<unsigned long long>(checked),
              static_cast<unsigned long long>(target),
              static_cast<unsigned long long>(windows));
  return 0;
}

int run_gasket(const CommonFlags& common, std::uint32_t q,
               const std::string& gamma_text, const std::string& b_text,
               std::uint32_t n) {
  const Rational gamma = pascalab::parse_rational(gamma_text);
  const Rational b = pascalab::parse_rational(b_text);
  RunMeta meta;
  meta.experiment = "gasket";
  meta.seed = common.seed;
  meta.config = {{"q", std::to_string(q)},
                 {"gamma", gamma.get_str()},
                 {"b", b.get_str()},
                 {"n", std::to_string(n)}};
  std::vector<std::vector<std::string>> rows;
  for (std::uint32_t stage = 0; stage <= n; ++stage) {
    const Rational ratio =
        pascalab::gasket_line_ratio(q, stage, {gamma, b});
    rows.push_back({std::to_string(stage),
                    ratio.get_num().get_str(),
                    ratio.get_den().get_str(),
                    pascalab::rational_decimal(ratio)});
  }
  emit_table(meta, {"n", "ratio_num", "ratio_den", "ratio"}, rows,
             common.format, common.out);
  return 0;
}

int run_divisibility(const CommonFlags& common, std::uint32_t q,
                     std::uint64_t n) {
  if (n == 0) throw pascalab::InvalidArgs("divisibility needs --n >= 1");
  std::vector<std::size_t> checkpoints{static_cast<std::size_t>(n)};
  while (checkpoints.back() / 2 >= 125) {
    checkpoints.push_back(checkpoints.back() / 2);
  }
  std::reverse(checkpoints.begin(), checkpoints.end());
  const auto curve = pascalab::divisibility_curve(
      q, common.alpha, common.samples, checkpoints, common.seed,
      parse_exec(common.exec));
  RunMeta meta;
  meta.experiment = "divisibility";
  meta.seed = common.seed;
  meta.config = {{"alpha", pascalab::format_double(common.alpha)},
                 {"q", std::to_string(q)},
                 {"n", u64_str(n)},
                 {"samples", std::to_string(common.samples)},
                 {"exec", common.exec}};
  std::vector<std::vector<std::string>> rows;
  const double root = std::sqrt(static_cast<double>(common.samples));
  for (std::size_t i = 0; i < curve.checkpoints.size(); ++i) {
    rows.push_back(stats_row(meta, common.alpha, q, curve.checkpoints[i],
                             "divisible_fraction_mean", curve.mean[i],
                             pascalab::format_double(curve.sd[i] / root)));
  }
  emit_table(meta, stats_header(), rows, common.format, common.out);
  return 0;
}

int run_mixing(const CommonFlags& common, std::uint32_t q, std::uint32_t r,
               std::uint32_t m, std::uint32_t n) {
  RunMeta meta;
  meta.experiment = "mixing";
  meta.seed = common.seed;
  meta.config = {{"alpha", pascalab::format_double(common.alpha)},
                 {"q", std::to_string(q)},
                 {"r", std::to_string(r)},
                 {"m", std::to_string(m)},
                 {"n", std::to_string(n)},
                 {"samples", std::to_string(common.samples)},
                 {"row_rule", common.row_rule},
                 {"exec", common.exec}};
  std::vector<std::vector<std::string>> rows;
  for (std::uint32_t p = 0; p < q; ++p) {
    const auto e = pascalab::mixing_pair_estimate(
        q, p, r, m, n, common.samples, common.alpha, common.seed,
        parse_row_rule(common.row_rule), parse_exec(common.exec));
    const std::string tag = "_p" + std::to_string(p);
    rows.push_back(stats_row(meta, common.alpha, q, n, "joint" + tag,
                             e.joint, ""));
    rows.push_back(stats_row(meta, common.alpha, q, n, "marginal" + tag,
                             e.marginal, ""));
    rows.push_back(stats_row(meta, common.alpha, q, n, "diff" + tag,
                             e.diff_mean,
                             pascalab::format_double(e.diff_stderr)));
  }
  emit_table(meta, stats_header(), rows, common.format, common.out);
  return 0;
}

int run_sweep(const CommonFlags& common, std::uint32_t q, std::uint32_t p,
              std::uint32_t big_r) {
  if (big_r == 0) throw pascalab::InvalidArgs("sweep needs --n >= 1");
  if (p >= q) throw pascalab::InvalidArgs("sweep needs --p < q");
  const auto curve = pascalab::sweep_union_curve(
      q, p, big_r, common.samples, common.alpha, common.seed,
      parse_row_rule(common.row_rule), parse_exec(common.exec));
  RunMeta meta;
  meta.experiment = "sweep";
  meta.seed = common.seed;
  meta.config = {{"alpha", pascalab::format_double(common.alpha)},
                 {"q", std::to_string(q)},
                 {"p", std::to_string(p)},
                 {"R", std::to_string(big_r)},
                 {"samples", std::to_string(common.samples)},
                 {"row_rule", common.row_rule},
                 {"exec", common.exec}};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t stage = 1; stage <= curve.size(); ++stage) {
    const double v = curve[stage - 1];
    const double se =
        std::sqrt(std::max(v * (1.0 - v), 0.0) /
                  static_cast<double>(common.samples));
    rows.push_back(stats_row(meta, common.alpha, q, stage,
                             "union_mass_p" + std::to_string(p), v,
                             pascalab::format_double(se)));
  }
  emit_table(meta, stats_header(), rows, common.format, common.out);
  return 0;
}

struct ThetaFlags {
  std::string primes = "2,3";
  std::string mode = "sweep";
  std::string delta = "strict";
  std::string epsilons;
  std::string thresholds;
};

std::vector<std::uint32_t> parse_prime_list(const std::string& text) {
  std::vector<std::uint32_t> primes;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (cur.empty()) continue;
      try {
        primes.push_back(static_cast<std::uint32_t>(std::stoul(cur)));
      } catch (const std::exception&) {
        throw pascalab::InvalidArgs("bad prime list entry: " + cur);
      }
      cur.clear();
    } else {
      cur += c;
    }
  }
  return primes;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> values;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (cur.empty()) continue;
      try {
        values.push_back(std::stod(cur));
      } catch (const std::exception&) {
        throw pascalab::InvalidArgs(std::string("bad ") + what +
                                    " list entry: " + cur);
      }
      cur.clear();
    } else {
      cur += c;
    }
  }
  return values;
}

pascalab::ThetaConstruction build_from_flags(const CommonFlags& common,
                                             const ThetaFlags& tf) {
  const auto primes = parse_prime_list(tf.primes);
  pascalab::CalibrationMode mode;
  if (tf.mode == "sweep") {
    mode = pascalab::CalibrationMode::kSweep;
  } else if (tf.mode == "weyl") {
    mode = pascalab::CalibrationMode::kWeyl;
  } else {
    throw pascalab::InvalidArgs("mode must be sweep or weyl, got " + tf.mode);
  }
  pascalab::DeltaMode delta;
  if (tf.delta == "strict") {
    delta = pascalab::DeltaMode::kStrict;
  } else if (tf.delta == "relaxed") {
    delta = pascalab::DeltaMode::kRelaxed;
  } else {
    throw pascalab::InvalidArgs("delta must be strict or relaxed, got " +
                                tf.delta);
  }
  pascalab::BuildOptions opts;
  opts.samples = common.samples;
  opts.rule = parse_row_rule(common.row_rule);
  opts.exec = parse_exec(common.exec);
  if (!tf.epsilons.empty()) {
    opts.epsilons = parse_double_list(tf.epsilons, "epsilon");
  }
  if (!tf.thresholds.empty()) {
    opts.thresholds = parse_double_list(tf.thresholds, "threshold");
  }
  return pascalab::build_theta(primes, common.alpha, common.seed, mode, delta,
                               opts);
}

std::vector<std::pair<std::string, std::string>> theta_config(
    const CommonFlags& common, const ThetaFlags& tf) {
  return {{"primes", tf.primes},
          {"alpha", pascalab::format_double(common.alpha)},
          {"mode", tf.mode},
          {"delta", tf.delta},
          {"samples", std::to_string(common.samples)},
          {"epsilons", tf.epsilons},
          {"thresholds", tf.thresholds},
          {"row_rule", common.row_rule},
          {"exec", common.exec}};
}

int run_theta_build(const CommonFlags& common, const ThetaFlags& tf) {
  if (common.format != "json") {
    throw pascalab::InvalidArgs(
        "theta-build emits a JSON artifact; pass --format json");
  }
  const auto tc = build_from_flags(common, tf);
  RunMeta meta;
  meta.experiment = "theta-build";
  meta.seed = common.seed;
  meta.config = theta_config(common, tf);
  nlohmann::ordered_json j = pascalab::meta_json(meta);
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (const auto& s : tc.stages) {
    nlohmann::ordered_json stage;
    stage["index"] = s.index;
    stage["q"] = s.q;
    stage["p"] = s.p;
    stage["depth"] = s.depth;
    stage["log2_delta"] = pascalab::format_double(s.log2_delta);
    stage["epsilon"] = pascalab::format_double(s.epsilon);
    stages.push_back(stage);
  }
  j["stages"] = stages;
  j["precision"] = tc.value.precision;
  j["theta_hex"] = tc.value.bits.get_str(16);
  j["theta_double"] =
      pascalab::format_double(pascalab::fixed_point_to_double(tc.value));
  pascalab::write_artifact(common.out, j.dump(2) + "\n");
  return 0;
}

int run_theta_stats(const CommonFlags& common, const ThetaFlags& tf,
                    std::size_t paths, std::size_t horizon) {
  if (paths == 0) throw pascalab::InvalidArgs("theta-stats needs --paths >= 1");
  const auto tc = build_from_flags(common, tf);
  const std::uint32_t q_last = tc.stages.back().q;
  if (horizon == 0) horizon = pascalab::default_stats_horizon(tc);
  const auto series = pascalab::theta_path_series(
      tc, paths, horizon, common.alpha, common.seed, parse_exec(common.exec));

  RunMeta meta;
  meta.experiment = "theta-stats";
  meta.seed = common.seed;
  meta.config = theta_config(common, tf);
  meta.config.emplace_back("paths", std::to_string(paths));
  meta.config.emplace_back("horizon", std::to_string(horizon));

  std::vector<std::vector<std::string>> rows;
  const double root = std::sqrt(static_cast<double>(paths));
  std::vector<std::size_t> windows;
  for (std::size_t w = 16; w < horizon; w *= 2) windows.push_back(w);
  windows.push_back(horizon);
  for (std::size_t w : windows) {
    double mean = 0;
    double sq = 0;
    for (const auto& s : series) {
      const double v = pascalab::weyl_average(s, w);
      mean += v;
      sq += v * v;
    }
    mean /= static_cast<double>(paths);
    const double var =
        std::max(sq / static_cast<double>(paths) - mean * mean, 0.0);
    rows.push_back(stats_row(meta, common.alpha, q_last, w, "weyl_mean", mean,
                             pascalab::format_double(std::sqrt(var) / root)));
  }

  std::size_t dense = 0;
  for (const auto& s : series) {
    if (pascalab::epsilon_dense(s, 2.0 / q_last)) ++dense;
  }
  rows.push_back(stats_row(meta, common.alpha, q_last, horizon,
                           "dense_fraction",
                           static_cast<double>(dense) /
                               static_cast<double>(paths),
                           ""));

  constexpr std::uint32_t kBins = 64;
  std::vector<std::uint64_t> pooled(kBins, 0);
  std::uint64_t total = 0;
  for (const auto& s : series) {
    const auto h = pascalab::arc_histogram(s, kBins);
    for (std::uint32_t i = 0; i < kBins; ++i) pooled[i] += h[i];
    total += s.values.size();
  }
  for (std::uint32_t i = 0; i < kBins; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "hist_bin_%02u", i);
    rows.push_back(stats_row(meta, common.alpha, q_last, horizon, name,
                             static_cast<double>(pooled[i]) /
                                 static_cast<double>(total),
                             ""));
  }
  emit_table(meta, stats_header(), rows, common.format, common.out);
  return 0;
}

int run_erdos(const CommonFlags& common, std::uint32_t rmax) {
  const auto found = pascalab::search_pow2_sum_pow3(rmax);
  RunMeta meta;
  meta.experiment = "erdos-search";
  meta.seed = common.seed;
  meta.config = {{"rmax", std::to_string(rmax)}};
  if (common.format == "json") {
    nlohmann::ordered_json j = pascalab::meta_json(meta);
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& rec : found) {
      nlohmann::ordered_json item;
      item["r"] = rec.r;
      item["value"] = rec.value.get_str();
      item["exponents"] = rec.exponents;
      list.push_back(item);
    }
    j["solutions"] = list;
    pascalab::write_artifact(common.out, j.dump(2) + "\n");
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& rec : found) {
    std::string exps;
    for (std::size_t i = 0; i < rec.exponents.size(); ++i) {
      if (i > 0) exps += "+";
      exps += std::to_string(rec.exponents[i]);
    }
    rows.push_back({std::to_string(rec.r), rec.value.get_str(), exps});
  }
  emit_table(meta, {"r", "value", "exponents"}, rows, common.format,
             common.out);
  return 0;
}

int run_cantor(const CommonFlags& common, const std::string& bases_text,
               const std::string& bound_text) {
  const auto bases = parse_prime_list(bases_text);
  if (bases.empty()) throw pascalab::InvalidArgs("cantor needs --bases");
  std::vector<pascalab::DigitSet> sets;
  for (std::uint32_t base : bases) {
    if (base < 2) throw pascalab::InvalidArgs("cantor bases must be >= 2");
    sets.push_back(pascalab::DigitSet::half_range(base));
  }
  mpz_class bound;
  try {
    bound = mpz_class(bound_text);
  } catch (const std::exception&) {
    throw pascalab::InvalidArgs("bad --bound integer: " + bound_text);
  }
  if (bound < 1) throw pascalab::InvalidArgs("cantor needs --bound >= 1");
  const auto members = pascalab::cantor_intersect(sets, bound);
  RunMeta meta;
  meta.experiment = "cantor";
  meta.seed = common.seed;
  meta.config = {{"bases", bases_text}, {"bound", bound_text}};
  std::vector<std::vector<std::string>> rows;
  for (const auto& v : members) rows.push_back({v.get_str()});
  emit_table(meta, {"value"}, rows, common.format, common.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binomial residue and circle-distribution experiments"};
  app.set_version_flag("--version", pascalab::kVersion);
  app.set_config("--config")->configurable(false);
  app.require_subcommand(1);

  CommonFlags common;

  // Shared flags are registered per subcommand so a config file can hold
  // sections like [sweep]; the lambda keeps the wiring in one place.
  const auto add_common = [&common](CLI::App* sub, bool with_stats_flags) {
    sub->add_option("--seed", common.seed, "Base RNG seed");
    sub->add_option("--out", common.out,
                    "Output path (empty writes to stdout)");
    sub->add_option("--format", common.format, "Artifact format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_stats_flags) {
      sub->add_option("--alpha", common.alpha,
                      "Bernoulli parameter for path labels")
          ->check(CLI::Range(0.0, 1.0));
      sub->add_option("--samples", common.samples, "Sampled paths per run");
      sub->add_option("--exec", common.exec, "Execution: serial or parallel")
          ->check(CLI::IsMember({"serial", "parallel"}));
      sub->add_option("--row-rule", common.row_rule,
                      "Probe rows: pow-minus-two or pow")
          ->check(CLI::IsMember({"pow-minus-two", "pow"}));
    }
  };

  std::uint32_t q = 3;
  std::uint32_t n32 = 8;
  auto* row_check = app.add_subcommand(
      "row-check", "Verify the distinguished-row residue pattern");
  row_check->add_option("--q", q, "Prime modulus");
  row_check->add_option("--n", n32, "Power: checks row q^n - 2");

  std::string gamma_text = "1";
  std::string b_text = "0";
  auto* gasket = app.add_subcommand(
      "gasket", "Exact retained-measure table for a line over the gasket");
  add_common(gasket, false);
  gasket->add_option("--q", q, "Subdivision arity");
  gasket->add_option("--gamma", gamma_text, "Line slope, as num/den");
  gasket->add_option("--b", b_text, "Line x-intercept, as num/den");
  gasket->add_option("--n", n32, "Deepest stage tabulated");

  std::uint64_t n64 = 20000;
  auto* divisibility = app.add_subcommand(
      "divisibility", "Divisible fraction along random paths");
  add_common(divisibility, true);
  divisibility->add_option("--q", q, "Prime modulus");
  divisibility->add_option("--n", n64, "Deepest level checked");

  std::uint32_t early_class = 1;
  std::uint32_t early_stage = 2;
  auto* mixing = app.add_subcommand(
      "mixing", "Joint vs marginal class-hit frequencies at two stages");
  add_common(mixing, true);
  mixing->add_option("--q", q, "Prime modulus");
  mixing->add_option("--r", early_class, "Class at the early stage");
  mixing->add_option("--m", early_stage, "Early stage");
  mixing->add_option("--n", n32, "Late stage");

  std::uint32_t class_p = 0;
  auto* sweep = app.add_subcommand(
      "sweep", "Mass of paths meeting one class by stage R");
  add_common(sweep, true);
  sweep->add_option("--q", q, "Prime modulus");
  sweep->add_option("--p", class_p, "Residue class");
  sweep->add_option("--n", n32, "Deepest stage R");

  ThetaFlags tf;
  auto* theta_build = app.add_subcommand(
      "theta-build", "Construct a dense-but-lopsided circle value");
  add_common(theta_build, true);
  theta_build->add_option("--primes", tf.primes, "Stage moduli, e.g. 2,3");
  theta_build->add_option("--mode", tf.mode, "Calibration: sweep or weyl")
      ->check(CLI::IsMember({"sweep", "weyl"}));
  theta_build->add_option("--delta", tf.delta,
                          "Radius schedule: strict or relaxed")
      ->check(CLI::IsMember({"strict", "relaxed"}));
  theta_build->add_option("--epsilons", tf.epsilons,
                          "Per-stage mass budgets, comma list");
  theta_build->add_option("--thresholds", tf.thresholds,
                          "Per-stage acceptance thresholds, comma list");

  std::size_t paths = 100;
  std::size_t horizon = 0;
  auto* theta_stats = app.add_subcommand(
      "theta-stats", "Circle statistics for a deterministically rebuilt value");
  add_common(theta_stats, true);
  theta_stats->add_option("--primes", tf.primes, "Stage moduli, e.g. 2,3");
  theta_stats->add_option("--mode", tf.mode, "Calibration: sweep or weyl")
      ->check(CLI::IsMember({"sweep", "weyl"}));
  theta_stats->add_option("--delta", tf.delta,
                          "Radius schedule: strict or relaxed")
      ->check(CLI::IsMember({"strict", "relaxed"}));
  theta_stats->add_option("--epsilons", tf.epsilons,
                          "Per-stage mass budgets, comma list");
  theta_stats->add_option("--thresholds", tf.thresholds,
                          "Per-stage acceptance thresholds, comma list");
  theta_stats->add_option("--paths", paths, "Paths sampled for statistics");
  theta_stats->add_option("--horizon", horizon,
                          "Levels per path (0 picks a default)");

  std::uint32_t rmax = 60;
  auto* erdos = app.add_subcommand(
      "erdos-search", "Powers of two that are sums of distinct powers of 3");
  add_common(erdos, false);
  erdos->add_option("--rmax", rmax, "Largest exponent searched");

  std::string bases_text = "3,5";
  std::string bound_text = "2000";
  auto* cantor = app.add_subcommand(
      "cantor", "Intersection of digit-restricted integer Cantor sets");
  add_common(cantor, false);
  cantor->add_option("--bases", bases_text, "Bases, e.g. 3,5");
  cantor->add_option("--bound", bound_text, "Upper bound, decimal integer");

  // Let `--config` and friends appear after the subcommand name too.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) {
         return true;
       })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (row_check->parsed()) return run_row_check(q, n32);
    if (gasket->parsed()) {
      return run_gasket(common, q, gamma_text, b_text, n32);
    }
    if (divisibility->parsed()) return run_divisibility(common, q, n64);
    if (mixing->parsed()) {
      return run_mixing(common, q, early_class, early_stage, n32);
    }
    if (sweep->parsed()) return run_sweep(common, q, class_p, n32);
    if (theta_build->parsed()) {
      if (theta_build->get_option("--format")->count() == 0) {
        common.format = "json";
      }
      return run_theta_build(common, tf);
    }
    if (theta_stats->parsed()) {
      return run_theta_stats(common, tf, paths, horizon);
    }
    if (erdos->parsed()) return run_erdos(common, rmax);
    if (cantor->parsed()) return run_cantor(common, bases_text, bound_text);
  } catch (const pascalab::InvalidArgs& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const pascalab::OutOfRange& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const pascalab::DegenerateLine& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const pascalab::Error& e) {
    std::fprintf(stderr, "run failed: %s\n", e.what());
    return 1;
  }
  return 2;
}
