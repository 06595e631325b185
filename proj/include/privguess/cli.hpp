// Copyright 2026 The privguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVGUESS_CLI_HPP_
#define PRIVGUESS_CLI_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "privguess/curve.hpp"

namespace privguess {

inline constexpr const char* kVersion = "0.1.0";

enum class Command {
  kScalar,
  kVectorIid,
  kVectorMarkov,
  kParametric,
  kOracle,
  kGaussian,
  kVerify,
  kFig5,
};

enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  Command command = Command::kScalar;

  double p = 0.6;
  double alpha = 0.2;
  double beta = 0.2;
  double r = 0.0;
  int n = 1;

  double var_y = 1.0;
  double rho = 0.8;
  std::optional<double> rho_m;  // defaults to |rho| (jointly Gaussian)

  // either a single eps or a min:max:count grid; when absent the natural
  // domain of the command is sampled with 21 points
  std::optional<double> eps;
  std::optional<double> eps_min;
  std::optional<double> eps_max;
  int eps_count = 21;

  int resolution = 0;  // 0 -> default for the alphabet size
  int budget = 0;      // oracle: >0 adds random-search rows
  std::uint64_t seed = 1;

  std::string out;        // output path; empty -> stdout
  std::string out_dir = ".";  // fig5 output directory
  OutputFormat format = OutputFormat::kCsv;
  bool memoryless = false;  // vector-iid: per-coordinate filter curve
  bool strict = false;      // fail instead of marking uncertified points
  std::string joint_csv;    // oracle: explicit joint pmf file
  int threads = 0;          // 0 -> PRIVGUESS_THREADS, else 1
};

// Exit codes: 0 ok, 2 validation error, 3 outside certified regime,
// 1 internal assertion failure. Error detail goes to stderr.
int run(const RunConfig& config);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

struct Fig5Result {
  TradeoffCurve memoryless;   // per-symbol, same line for every n
  TradeoffCurve underline_h2;
  TradeoffCurve underline_h10;
  LineFit memoryless_fit;     // utility vs eps
  LineFit h2_fit;             // utility^2 vs eps^2
  LineFit h10_fit;            // utility^10 vs eps^10
  std::optional<double> h2_eps_certified;   // left end of the certified run
  std::optional<double> h10_eps_certified;
  std::vector<std::string> files;
};

// Bernoulli(0.6) source through BSC(0.2): the memoryless line and the
// vector curves for n = 2 and n = 10 over eps in [0.6, 0.8], written as
// three CSV files under out_dir.
Fig5Result reproduce_fig5(const std::string& out_dir);

}  // namespace privguess

#endif  // PRIVGUESS_CLI_HPP_
