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

#include "privguess/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include "privguess/gaussian.hpp"
#include "privguess/io.hpp"
#include "privguess/oracle.hpp"
#include "privguess/scalar.hpp"
#include "privguess/vector_models.hpp"

namespace privguess {

namespace {

std::vector<double> eps_grid(const RunConfig& cfg, double lo, double hi) {
  if (cfg.eps) return {*cfg.eps};
  double a = cfg.eps_min.value_or(lo);
  double b = cfg.eps_max.value_or(hi);
  int count = cfg.eps_count;
  if (count < 1) throw ValidationError("eps grid: count must be >= 1");
  if (b < a) throw ValidationError("eps grid: max below min");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = count == 1 ? a : a + (b - a) * i / (count - 1);
  }
  return out;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(cfg.out, text);
  }
}

void check_emitted_filters(const TradeoffCurve& curve) {
  for (const TradeoffPoint& pt : curve.points) {
    if (pt.filter && !pt.achieved) {
      throw std::logic_error(
          "emitted point carries a filter without a passing certificate");
    }
  }
}

nlohmann::ordered_json base_meta(const RunConfig& cfg, const char* command) {
  nlohmann::ordered_json meta;
  meta["tool"] = "privguess";
  meta["version"] = kVersion;
  meta["command"] = command;
  meta["seed"] = cfg.seed;
  return meta;
}

std::string render_curve(const RunConfig& cfg, const TradeoffCurve& curve,
                         const CurveCsvOptions& csv_opts,
                         nlohmann::ordered_json meta) {
  if (cfg.format == OutputFormat::kCsv) return curve_to_csv(curve, csv_opts);
  return curve_to_json(curve, meta).dump(2) + "\n";
}

int threads_from(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("PRIVGUESS_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

void run_scalar(const RunConfig& cfg) {
  BinaryScalarModel model(cfg.p, cfg.alpha, cfg.beta);
  double lo = model.pc_x();
  double hi = model.trivial_regime() ? model.pc_x() : model.pc_x_given_y();
  TradeoffCurve curve;
  curve.eps_min = lo;
  curve.eps_max = hi;
  for (double e : eps_grid(cfg, lo, hi)) {
    curve.points.push_back(h_binary(model, e));
  }
  check_emitted_filters(curve);
  auto meta = base_meta(cfg, "scalar");
  meta["p"] = cfg.p;
  meta["alpha"] = cfg.alpha;
  meta["beta"] = cfg.beta;
  emit(cfg, render_curve(cfg, curve, {}, meta));
}

void run_vector_iid(const RunConfig& cfg) {
  IidModel model(cfg.n, cfg.p, cfg.alpha);
  double lo = model.p, hi = 1.0 - model.alpha;
  TradeoffCurve curve;
  curve.eps_min = lo;
  curve.eps_max = hi;
  for (double e : eps_grid(cfg, lo, hi)) {
    curve.points.push_back(cfg.memoryless
                               ? h_n_memoryless(model, e)
                               : (cfg.strict ? underline_h_n_iid(model, e)
                                             : underline_h_n_iid_formula(
                                                   model, e)));
  }
  check_emitted_filters(curve);
  CurveCsvOptions opts;
  opts.n_column = true;
  opts.n = cfg.n;
  opts.achieved_column = true;
  auto meta = base_meta(cfg, cfg.memoryless ? "vector-iid-memoryless"
                                            : "vector-iid");
  meta["n"] = cfg.n;
  meta["p"] = cfg.p;
  meta["alpha"] = cfg.alpha;
  emit(cfg, render_curve(cfg, curve, opts, meta));
}

void run_vector_markov(const RunConfig& cfg) {
  MarkovModel model(cfg.n, cfg.p, cfg.alpha, cfg.r);
  double t = pc_markov_cond(model);
  double lo = std::pow(model.pc_x(), 1.0 / cfg.n);
  double hi = std::pow(t, 1.0 / cfg.n);
  TradeoffCurve curve;
  curve.eps_min = lo;
  curve.eps_max = hi;
  CurveCsvOptions opts;
  opts.n_column = true;
  opts.n = cfg.n;
  opts.achieved_column = true;
  opts.upper_column = true;
  for (double e : eps_grid(cfg, lo, hi)) {
    MarkovBounds b = cfg.strict ? underline_h_n_markov_bounds(model, e)
                                : underline_h_n_markov_bounds_formula(model, e);
    curve.points.push_back(b.lower);
    opts.upper.push_back(b.upper);
  }
  check_emitted_filters(curve);
  auto meta = base_meta(cfg, "vector-markov");
  meta["n"] = cfg.n;
  meta["p"] = cfg.p;
  meta["alpha"] = cfg.alpha;
  meta["r"] = cfg.r;
  emit(cfg, render_curve(cfg, curve, opts, meta));
}

void run_parametric(const RunConfig& cfg) {
  ParametricModel model(cfg.n, cfg.p, cfg.alpha);
  double t = model.pc_theta_given_yn();
  double lo = std::pow(model.p, 1.0 / cfg.n);
  double hi = std::pow(t, 1.0 / cfg.n);
  TradeoffCurve curve;
  curve.eps_min = lo;
  curve.eps_max = hi;
  for (double e : eps_grid(cfg, lo, hi)) {
    curve.points.push_back(cfg.strict ? parametric_h_n(model, e)
                                      : parametric_h_n_formula(model, e));
  }
  check_emitted_filters(curve);
  CurveCsvOptions opts;
  opts.n_column = true;
  opts.n = cfg.n;
  opts.achieved_column = true;
  auto meta = base_meta(cfg, "parametric");
  meta["n"] = cfg.n;
  meta["p"] = cfg.p;
  meta["alpha"] = cfg.alpha;
  emit(cfg, render_curve(cfg, curve, opts, meta));
}

void run_oracle(const RunConfig& cfg) {
  JointPmf joint =
      cfg.joint_csv.empty()
          ? BinaryScalarModel(cfg.p, cfg.alpha, cfg.beta).joint()
          : joint_from_csv(read_text_file(cfg.joint_csv));
  int points = cfg.eps ? 1 : cfg.eps_count;
  TradeoffCurve curve =
      oracle_curve(joint, points, cfg.resolution, threads_from(cfg));
  CurveCsvOptions opts;
  opts.source_column = true;
  opts.sources.assign(curve.points.size(), "lp");
  if (cfg.budget > 0) {
    std::size_t lp_points = curve.points.size();
    for (std::size_t i = 0; i < lp_points; ++i) {
      TradeoffPoint pt = random_filter_search(joint, curve.points[i].epsilon,
                                              cfg.budget, cfg.seed);
      pt.filter.reset();  // keep row sizes bounded in emitted files
      curve.points.push_back(pt);
      opts.sources.push_back("search");
    }
  }
  check_emitted_filters(curve);
  auto meta = base_meta(cfg, "oracle");
  meta["resolution"] = cfg.resolution;
  meta["budget"] = cfg.budget;
  emit(cfg, render_curve(cfg, curve, opts, meta));
}

void run_gaussian(const RunConfig& cfg) {
  GaussianPairModel model(cfg.var_y, cfg.rho,
                          cfg.rho_m.value_or(std::abs(cfg.rho)));
  double r2 = model.rho * model.rho;
  std::string out = "epsilon,sensr,gamma_eps,lower,upper\n";
  nlohmann::ordered_json jpoints = nlohmann::ordered_json::array();
  for (double e : eps_grid(cfg, 0.0, r2)) {
    SensrResult s = sensr_gaussian(model, e);
    SensrBounds b = sensr_bounds_gaussian_y(model, e);
    out += format_sig(e);
    out += ',';
    out += format_sig(s.value);
    out += ',';
    out += format_sig(s.gamma_eps);
    out += ',';
    out += b.lower ? format_sig(*b.lower) : "";
    out += ',';
    out += b.upper ? format_sig(*b.upper) : "";
    out += '\n';
    nlohmann::ordered_json jp{{"epsilon", e},
                              {"sensr", s.value},
                              {"gamma_eps", s.gamma_eps},
                              {"attained", s.attained}};
    if (b.lower) jp["lower"] = *b.lower;
    if (b.upper) jp["upper"] = *b.upper;
    jpoints.push_back(jp);
  }
  if (cfg.format == OutputFormat::kCsv) {
    emit(cfg, out);
  } else {
    auto meta = base_meta(cfg, "gaussian");
    meta["var_y"] = cfg.var_y;
    meta["rho"] = cfg.rho;
    meta["rho_m"] = cfg.rho_m.value_or(std::abs(cfg.rho));
    emit(cfg,
         nlohmann::ordered_json{{"meta", meta}, {"points", jpoints}}.dump(2) +
             "\n");
  }
}

void run_verify(const RunConfig& cfg) {
  BinaryScalarModel model(cfg.p, cfg.alpha, cfg.beta);
  if (model.trivial_regime()) {
    throw ValidationError("verify: trivial regime, nothing to compare");
  }
  JointPmf joint = model.joint();
  int resolution = cfg.resolution > 0 ? cfg.resolution : 512;
  PosteriorGrid fine = build_posterior_grid(joint, resolution);
  PosteriorGrid coarse = build_posterior_grid(joint, resolution / 2);
  double lo = model.pc_x(), hi = model.pc_x_given_y();

  std::string csv = "epsilon,closed_form,lp_value,abs_diff,resolution_delta\n";
  double max_diff = 0.0, max_delta = 0.0;
  for (double e : eps_grid(cfg, lo, hi)) {
    double closed = h_binary(model, e).utility;
    LpSolution sol = oracle_h_on_grid(joint, fine, e);
    LpSolution sol_coarse = oracle_h_on_grid(joint, coarse, e);
    if (sol.status != OracleStatus::kOptimal ||
        sol_coarse.status != OracleStatus::kOptimal) {
      throw std::logic_error("verify: oracle infeasible inside the domain");
    }
    double diff = std::abs(closed - sol.value);
    double delta = std::abs(sol.value - sol_coarse.value);
    max_diff = std::max(max_diff, diff);
    max_delta = std::max(max_delta, delta);
    csv += format_sig(e) + "," + format_sig(closed) + "," +
           format_sig(sol.value) + "," + format_sig(diff) + "," +
           format_sig(delta) + "\n";
  }
  std::cerr << "verify: max |closed-form - lp| = " << format_sig(max_diff)
            << ", max resolution-halving delta = " << format_sig(max_delta)
            << "\n";
  emit(cfg, csv);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace

Fig5Result reproduce_fig5(const std::string& out_dir) {
  constexpr double kP = 0.6, kAlpha = 0.2;
  constexpr int kPoints = 101;
  const double lo = kP, hi = 1.0 - kAlpha;

  Fig5Result result;
  IidModel m2(2, kP, kAlpha), m10(10, kP, kAlpha);

  std::vector<double> eps(kPoints);
  for (int i = 0; i < kPoints; ++i)
    eps[i] = lo + (hi - lo) * i / (kPoints - 1);

  auto curve_of = [&](auto&& f) {
    TradeoffCurve c;
    c.eps_min = lo;
    c.eps_max = hi;
    for (double e : eps) c.points.push_back(f(e));
    return c;
  };
  result.memoryless = curve_of([&](double e) { return h_n_memoryless(m2, e); });
  result.underline_h2 =
      curve_of([&](double e) { return underline_h_n_iid_formula(m2, e); });
  result.underline_h10 =
      curve_of([&](double e) { return underline_h_n_iid_formula(m10, e); });

  auto transformed_fit = [&](const TradeoffCurve& c, int n) {
    std::vector<double> xs, ys;
    for (const TradeoffPoint& pt : c.points) {
      xs.push_back(std::pow(pt.epsilon, n));
      ys.push_back(std::pow(pt.utility, n));
    }
    return fit_line(xs, ys);
  };
  result.memoryless_fit = transformed_fit(result.memoryless, 1);
  result.h2_fit = transformed_fit(result.underline_h2, 2);
  result.h10_fit = transformed_fit(result.underline_h10, 10);

  auto certified_left = [&](const TradeoffCurve& c) -> std::optional<double> {
    std::optional<double> left;
    for (auto it = c.points.rbegin(); it != c.points.rend(); ++it) {
      if (!it->achieved) break;
      left = it->epsilon;
    }
    return left;
  };
  result.h2_eps_certified = certified_left(result.underline_h2);
  result.h10_eps_certified = certified_left(result.underline_h10);

  CurveCsvOptions opts;
  opts.n_column = true;
  opts.achieved_column = true;
  auto write = [&](const char* name, const TradeoffCurve& c, int n) {
    opts.n = n;
    std::string path = out_dir + "/" + name;
    write_text_file(path, curve_to_csv(c, opts));
    result.files.push_back(path);
  };
  write("fig5_memoryless.csv", result.memoryless, 2);
  write("fig5_underline_h2.csv", result.underline_h2, 2);
  write("fig5_underline_h10.csv", result.underline_h10, 10);
  return result;
}

int run(const RunConfig& cfg) {
  try {
    switch (cfg.command) {
      case Command::kScalar: run_scalar(cfg); break;
      case Command::kVectorIid: run_vector_iid(cfg); break;
      case Command::kVectorMarkov: run_vector_markov(cfg); break;
      case Command::kParametric: run_parametric(cfg); break;
      case Command::kOracle: run_oracle(cfg); break;
      case Command::kGaussian: run_gaussian(cfg); break;
      case Command::kVerify: run_verify(cfg); break;
      case Command::kFig5: {
        Fig5Result r = reproduce_fig5(cfg.out_dir);
        std::cout << "memoryless fit: slope " << format_sig(r.memoryless_fit.slope)
                  << ", intercept " << format_sig(r.memoryless_fit.intercept)
                  << "\n";
        std::cout << "underline_h2^2 fit: slope " << format_sig(r.h2_fit.slope)
                  << ", intercept " << format_sig(r.h2_fit.intercept) << "\n";
        std::cout << "underline_h10^10 fit: slope "
                  << format_sig(r.h10_fit.slope) << ", intercept "
                  << format_sig(r.h10_fit.intercept) << "\n";
        std::cout << "certified eps_L (n=2): "
                  << (r.h2_eps_certified ? format_sig(*r.h2_eps_certified)
                                         : std::string("none"))
                  << ", (n=10): "
                  << (r.h10_eps_certified ? format_sig(*r.h10_eps_certified)
                                          : std::string("none"))
                  << "\n";
        for (const std::string& f : r.files) std::cout << "wrote " << f << "\n";
        break;
      }
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace privguess
