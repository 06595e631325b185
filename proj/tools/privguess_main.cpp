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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "privguess/cli.hpp"
#include "privguess/errors.hpp"

namespace {

using privguess::Command;
using privguess::OutputFormat;
using privguess::RunConfig;

struct GridFlag {
  std::string text;
};

void apply_eps_grid(RunConfig& cfg, const std::string& text) {
  if (text.empty()) return;
  auto first = text.find(':');
  auto second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw CLI::ValidationError("--eps-grid", "expected min:max:count");
  }
  try {
    cfg.eps_min = std::stod(text.substr(0, first));
    cfg.eps_max = std::stod(text.substr(first + 1, second - first - 1));
    cfg.eps_count = std::stoi(text.substr(second + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--eps-grid", "expected min:max:count");
  }
  if (cfg.eps_count < 1) {
    throw CLI::ValidationError("--eps-grid", "count must be >= 1");
  }
}

// Subcommand options also accept values from a [name] section of the
// TOML file passed to the top-level --config; explicit flags win.
CLI::App* add_common(CLI::App& app, const std::string& name,
                     const std::string& desc, RunConfig& cfg,
                     std::string& eps_grid_text, std::string& format_text) {
  CLI::App* sub = app.add_subcommand(name, desc);
  sub->fallthrough();
  sub->add_option("--eps", cfg.eps, "single privacy threshold");
  sub->add_option("--eps-grid", eps_grid_text, "grid min:max:count");
  sub->add_option("--out", cfg.out, "output path (default stdout)");
  sub->add_option("--format", format_text, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", cfg.seed, "search seed");
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy-utility tradeoff curves for guessing and estimation"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML config file with [subcommand] sections; flags take "
                 "precedence");

  RunConfig cfg;
  std::string eps_grid_text, format_text = "csv";

  CLI::App* scalar = add_common(app, "scalar", "binary closed-form tradeoff", cfg, eps_grid_text, format_text);
  scalar->add_option("--p", cfg.p, "P(X=1)");
  scalar->add_option("--alpha", cfg.alpha, "crossover on 0");
  scalar->add_option("--beta", cfg.beta, "crossover on 1");

  CLI::App* viid = add_common(app, "vector-iid", "i.i.d. binary vector tradeoff", cfg, eps_grid_text, format_text);
  viid->add_option("--n", cfg.n, "vector length");
  viid->add_option("--p", cfg.p, "P(X_k=1)");
  viid->add_option("--alpha", cfg.alpha, "observation crossover");
  viid->add_flag("--memoryless", cfg.memoryless,
                 "per-coordinate filter curve instead");
  viid->add_flag("--strict", cfg.strict, "fail on uncertified points");

  CLI::App* vmar = add_common(app, "vector-markov", "Markov binary vector bounds", cfg, eps_grid_text, format_text);
  vmar->add_option("--n", cfg.n, "vector length (odd)");
  vmar->add_option("--p", cfg.p, "P(X_1=1)");
  vmar->add_option("--alpha", cfg.alpha, "observation crossover");
  vmar->add_option("--r", cfg.r, "transition flip probability");
  vmar->add_flag("--strict", cfg.strict, "fail on uncertified points");

  CLI::App* par = add_common(app, "parametric", "learning-from-private-distribution tradeoff", cfg, eps_grid_text, format_text);
  par->add_option("--n", cfg.n, "sample count (odd)");
  par->add_option("--p", cfg.p, "P(theta=1)");
  par->add_option("--alpha", cfg.alpha, "observation crossover");
  par->add_flag("--strict", cfg.strict, "fail on uncertified points");

  CLI::App* oracle = add_common(app, "oracle", "LP ground truth on small alphabets", cfg, eps_grid_text, format_text);
  oracle->add_option("--p", cfg.p, "P(X=1) for the built-in binary joint");
  oracle->add_option("--alpha", cfg.alpha, "crossover on 0");
  oracle->add_option("--beta", cfg.beta, "crossover on 1");
  oracle->add_option("--joint", cfg.joint_csv, "joint pmf CSV (x,y,p)");
  oracle->add_option("--resolution", cfg.resolution, "posterior grid size");
  oracle->add_option("--budget", cfg.budget,
                     "random-search candidates per point (0 = off)");
  oracle->add_option("--threads", cfg.threads,
                     "worker cap (default PRIVGUESS_THREADS or 1)");

  CLI::App* gauss = add_common(app, "gaussian", "Gaussian-perturbation MMSE tradeoff", cfg, eps_grid_text, format_text);
  gauss->add_option("--var-y", cfg.var_y, "variance of Y");
  gauss->add_option("--rho", cfg.rho, "correlation of (X, Y)");
  gauss->add_option("--rho-m", cfg.rho_m, "maximal correlation (default |rho|)");

  CLI::App* verify = add_common(app, "verify", "closed form vs LP oracle report", cfg, eps_grid_text, format_text);
  verify->add_option("--p", cfg.p, "P(X=1)");
  verify->add_option("--alpha", cfg.alpha, "crossover on 0");
  verify->add_option("--beta", cfg.beta, "crossover on 1");
  verify->add_option("--resolution", cfg.resolution, "posterior grid size");

  CLI::App* fig5 = add_common(app, "fig5", "reproduce the vector-tradeoff reference curves", cfg, eps_grid_text, format_text);
  fig5->add_option("--out-dir", cfg.out_dir, "directory for the three CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (scalar->parsed()) cfg.command = Command::kScalar;
  if (viid->parsed()) cfg.command = Command::kVectorIid;
  if (vmar->parsed()) cfg.command = Command::kVectorMarkov;
  if (par->parsed()) cfg.command = Command::kParametric;
  if (oracle->parsed()) cfg.command = Command::kOracle;
  if (gauss->parsed()) cfg.command = Command::kGaussian;
  if (verify->parsed()) cfg.command = Command::kVerify;
  if (fig5->parsed()) cfg.command = Command::kFig5;

  try {
    apply_eps_grid(cfg, eps_grid_text);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  cfg.format = format_text == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  return privguess::run(cfg);
}
