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

#include "privguess/vector_models.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace privguess {

namespace {

constexpr double kCertTol = 1e-9;
constexpr double kDomainSlack = 1e-12;

double snap_unit(double z) {
  if (z > 1.0 && z <= 1.0 + 1e-9) return 1.0;
  if (z < 0.0 && z >= -1e-9) return 0.0;
  return z;
}

double int_pow(double base, int e) {
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

void check_table_cap(int n, const char* what) {
  if (n > kMaxVectorBits) {
    throw ValidationError(std::string(what) + ": tables are capped at n = " +
                          std::to_string(kMaxVectorBits));
  }
}

int transitions(unsigned x, int n) {
  unsigned mask = (n >= 2) ? ((1u << (n - 1)) - 1u) : 0u;
  return std::popcount((x ^ (x >> 1)) & mask);
}

}  // namespace

IidModel::IidModel(int n_in, double p_in, double alpha_in)
    : n(n_in), p(p_in), alpha(alpha_in) {
  if (n < 1 || n > kMaxClosedFormN)
    throw ValidationError("IidModel: n must lie in [1, 20]");
  if (!(p >= 0.5 && p < 1.0))
    throw ValidationError("IidModel: p must lie in [0.5, 1)");
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw ValidationError("IidModel: alpha must lie in [0, 0.5)");
  if (!(1.0 - alpha > p))
    throw ValidationError("IidModel: requires 1 - alpha > p");
}

double IidModel::pc_x() const { return int_pow(p, n); }
double IidModel::pc_x_given_y() const { return int_pow(1.0 - alpha, n); }

MarkovModel::MarkovModel(int n_in, double p_in, double alpha_in, double r_in)
    : n(n_in), p(p_in), alpha(alpha_in), r(r_in) {
  if (n < 1 || n > kMaxClosedFormN)
    throw ValidationError("MarkovModel: n must lie in [1, 20]");
  if (!(p >= 0.5 && p < 1.0))
    throw ValidationError("MarkovModel: p must lie in [0.5, 1)");
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw ValidationError("MarkovModel: alpha must lie in [0, 0.5)");
  if (!(r >= 0.0 && r < 0.5))
    throw ValidationError("MarkovModel: r must lie in [0, 0.5)");
  if (!((1.0 - alpha) * (1.0 - p) > alpha * p))
    throw ValidationError("MarkovModel: requires (1-a)(1-p) > a p");
}

bool MarkovModel::mixing_hypothesis() const {
  return r / (1.0 - r) < int_pow(alpha / (1.0 - alpha), n - 1);
}

double MarkovModel::pc_x() const { return p * int_pow(1.0 - r, n - 1); }

ParametricModel::ParametricModel(int n_in, double p_in, double alpha_in)
    : n(n_in), p(p_in), alpha(alpha_in) {
  if (n < 1 || n > kMaxClosedFormN)
    throw ValidationError("ParametricModel: n must lie in [1, 20]");
  if (n % 2 == 0) throw ValidationError("ParametricModel: n must be odd");
  if (!(p >= 0.5 && p < 1.0))
    throw ValidationError("ParametricModel: p must lie in [0.5, 1)");
  if (!(alpha > 0.0 && alpha < 0.5))
    throw ValidationError("ParametricModel: alpha must lie in (0, 0.5)");
  if (!((1.0 - alpha) * (1.0 - p) > alpha * p))
    throw ValidationError("ParametricModel: requires (1-a)(1-p) > a p");
  if (!(p < pc_theta_given_yn()))
    throw ValidationError("ParametricModel: requires p < Pc(theta|Y^n)");
}

double ParametricModel::pc_theta_given_yn() const {
  MarkovModel m(n, p, alpha, 0.0);
  return pc_markov_cond(m);
}

JointPmf iid_joint(const IidModel& model) {
  check_table_cap(model.n, "iid_joint");
  double pbar = 1.0 - model.p, abar = 1.0 - model.alpha;
  JointPmf scalar(2, 2,
                  {pbar * abar, pbar * model.alpha, model.p * model.alpha,
                   model.p * abar});
  JointPmf out = scalar;
  for (int i = 1; i < model.n; ++i) out = tensor_product(out, scalar);
  return out;
}

JointPmf markov_joint(const MarkovModel& model) {
  check_table_cap(model.n, "markov_joint");
  int n = model.n;
  std::size_t size = std::size_t{1} << n;
  std::vector<double> table(size * size, 0.0);
  double abar = 1.0 - model.alpha;
  double pbar = 1.0 - model.p;
  std::vector<double> noise_pow(n + 1, 1.0);  // (alpha/abar)^k
  for (int k = 1; k <= n; ++k) noise_pow[k] = noise_pow[k - 1] * (model.alpha / abar);

  if (model.r == 0.0) {
    // mass only on constant x^n
    double base0 = pbar * int_pow(abar, n);
    double base1 = model.p * int_pow(abar, n);
    unsigned ones = static_cast<unsigned>(size - 1);
    for (unsigned y = 0; y < size; ++y) {
      int w = std::popcount(y);
      table[0 * size + y] = base0 * noise_pow[w];
      table[std::size_t{ones} * size + y] = base1 * noise_pow[n - w];
    }
    return JointPmf(size, size, std::move(table));
  }

  double rbar = 1.0 - model.r;
  std::vector<double> flip_pow(n, 1.0);  // (r/rbar)^t
  for (int k = 1; k < n; ++k) flip_pow[k] = flip_pow[k - 1] * (model.r / rbar);
  double base = pbar * int_pow(abar, n) * int_pow(rbar, n - 1);
  double first_ratio = model.p / pbar;
  for (unsigned x = 0; x < size; ++x) {
    double vx = base * flip_pow[transitions(x, n)];
    if (x & 1u) vx *= first_ratio;
    for (unsigned y = 0; y < size; ++y) {
      table[std::size_t{x} * size + y] = vx * noise_pow[std::popcount(x ^ y)];
    }
  }
  return JointPmf(size, size, std::move(table));
}

JointPmf parametric_joint(const ParametricModel& model) {
  check_table_cap(model.n, "parametric_joint");
  int n = model.n;
  std::size_t size = std::size_t{1} << n;
  double abar = 1.0 - model.alpha;
  std::vector<double> noise_pow(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) noise_pow[k] = noise_pow[k - 1] * (model.alpha / abar);
  double base0 = (1.0 - model.p) * int_pow(abar, n);
  double base1 = model.p * int_pow(abar, n);
  std::vector<double> table(2 * size, 0.0);
  for (unsigned y = 0; y < size; ++y) {
    int w = std::popcount(y);
    table[y] = base0 * noise_pow[w];
    table[size + y] = base1 * noise_pow[n - w];
  }
  return JointPmf(2, size, std::move(table));
}

double pc_product(const std::vector<JointPmf>& factors) {
  if (factors.empty()) throw ValidationError("pc_product: empty factor list");
  double out = 1.0;
  for (const JointPmf& j : factors) out *= pc_conditional(j);
  return out;
}

double pc_markov_cond(const MarkovModel& model) {
  if (model.n % 2 == 0) {
    throw ValidationError("pc_markov_cond: n must be odd");
  }
  if (model.alpha == 0.0 && model.n > 1) {
    // noiseless observations break the all-zeros/all-ones maximizer
    // structure the formula rests on
    throw ValidationError("pc_markov_cond: requires alpha > 0");
  }
  int n = model.n;
  double abar = 1.0 - model.alpha;
  double ratio = model.alpha / abar;
  double sum = 0.0;
  double binom = 1.0;  // C(n, k)
  double ratio_pow = 1.0;
  for (int k = 0; k <= (n - 1) / 2; ++k) {
    sum += binom * ratio_pow;
    binom = binom * (n - k) / (k + 1);
    ratio_pow *= ratio;
  }
  return int_pow(abar, n) * int_pow(1.0 - model.r, n - 1) * sum;
}

double pr_yn_all_ones(const MarkovModel& model) {
  int n = model.n;
  double abar = 1.0 - model.alpha;
  if (model.r == 0.0) {
    return (1.0 - model.p) * int_pow(model.alpha, n) +
           model.p * int_pow(abar, n);
  }
  double rbar = 1.0 - model.r;
  double pbar = 1.0 - model.p;
  std::vector<double> noise_pow(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) noise_pow[k] = noise_pow[k - 1] * (model.alpha / abar);
  std::vector<double> flip_pow(n, 1.0);
  for (int k = 1; k < n; ++k) flip_pow[k] = flip_pow[k - 1] * (model.r / rbar);
  double base = pbar * int_pow(abar, n) * int_pow(rbar, n - 1);
  std::size_t size = std::size_t{1} << n;
  double total = 0.0;
  for (unsigned x = 0; x < size; ++x) {
    double vx = base * flip_pow[transitions(x, n)];
    if (x & 1u) vx *= model.p / pbar;
    total += vx * noise_pow[n - std::popcount(x)];
  }
  return total;
}

namespace {

struct VectorPoint {
  double eps_n;      // eps^n
  double value_n;    // utility^n
  double zeta;       // 2^n-ary Z crossover
};

TradeoffPoint finish_vector_point(const JointPmf* joint, int n, double eps,
                                  const VectorPoint& vp, bool strict,
                                  const char* what) {
  TradeoffPoint pt;
  pt.epsilon = eps;
  pt.utility = std::pow(vp.value_n, 1.0 / n);
  pt.regime = Regime::kNaryZ;
  pt.filter_param = vp.zeta;
  if (vp.zeta > 1.0) {
    if (strict) {
      throw RegimeError(std::string(what) +
                        ": outside certified regime (crossover " +
                        std::to_string(vp.zeta) + " > 1)");
    }
    return pt;  // achieved stays false
  }
  if (joint != nullptr) {
    std::size_t ones = (std::size_t{1} << n) - 1;
    LeakagePair lp = evaluate_nary_z(*joint, ones, 0, vp.zeta);
    pt.achieved = std::abs(lp.privacy - vp.eps_n) <= kCertTol &&
                  std::abs(lp.utility - vp.value_n) <= kCertTol;
    // a filter is only attached with a passing certificate behind it
    if (pt.achieved && n <= 8) pt.filter = make_z2n(vp.zeta, n);
  }
  if (strict && !pt.achieved) {
    throw RegimeError(std::string(what) +
                      ": outside certified regime (certificate failed at "
                      "eps = " + std::to_string(eps) + ")");
  }
  return pt;
}

}  // namespace

static TradeoffPoint underline_iid_impl(const IidModel& model, double eps,
                                        bool strict) {
  double abar = 1.0 - model.alpha;
  if (eps < model.p - kDomainSlack || eps > abar + kDomainSlack) {
    throw ValidationError("underline_h_n_iid: eps outside [p, 1-alpha]");
  }
  VectorPoint vp;
  vp.eps_n = int_pow(eps, model.n);
  double denom =
      int_pow(abar * model.p, model.n) -
      int_pow(model.alpha * (1.0 - model.p), model.n);
  vp.zeta = snap_unit((int_pow(abar, model.n) - vp.eps_n) / denom);
  vp.value_n = 1.0 - vp.zeta * int_pow(model.q(), model.n);

  if (model.n <= kMaxVectorBits && vp.zeta <= 1.0) {
    JointPmf joint = iid_joint(model);
    return finish_vector_point(&joint, model.n, eps, vp, strict,
                               "underline_h_n_iid");
  }
  return finish_vector_point(nullptr, model.n, eps, vp, strict,
                             "underline_h_n_iid");
}

TradeoffPoint underline_h_n_iid(const IidModel& model, double eps) {
  return underline_iid_impl(model, eps, true);
}

TradeoffPoint underline_h_n_iid_formula(const IidModel& model, double eps) {
  return underline_iid_impl(model, eps, false);
}

TradeoffPoint h_n_memoryless(const IidModel& model, double eps) {
  double abar = 1.0 - model.alpha;
  if (eps < model.p - kDomainSlack || eps > abar + kDomainSlack) {
    throw ValidationError("h_n_memoryless: eps outside [p, 1-alpha]");
  }
  double denom = abar * model.p - model.alpha * (1.0 - model.p);
  double zeta = snap_unit((abar - eps) / denom);
  TradeoffPoint pt;
  pt.epsilon = eps;
  pt.utility = 1.0 - zeta * model.q();
  pt.regime = Regime::kZChannel;
  pt.filter_param = zeta;
  pt.filter = make_z(zeta);
  // single-letter certificate; the product structure lifts it exactly
  double pbar = 1.0 - model.p;
  JointPmf scalar(2, 2,
                  {pbar * abar, pbar * model.alpha, model.p * model.alpha,
                   model.p * abar});
  LeakagePair lp = evaluate_filter(scalar, *pt.filter);
  pt.achieved = std::abs(lp.privacy - eps) <= kCertTol &&
                std::abs(lp.utility - pt.utility) <= kCertTol;
  if (!pt.achieved) {
    throw std::logic_error("h_n_memoryless: scalar certificate failed");
  }
  return pt;
}

GapBounds gap_bounds(const IidModel& model, double eps) {
  double abar = 1.0 - model.alpha;
  if (eps < model.p - kDomainSlack || eps > abar + kDomainSlack) {
    throw ValidationError("gap_bounds: eps outside [p, 1-alpha]");
  }
  auto phi = [&](int n) {
    double denom = int_pow(abar * model.p, n) -
                   int_pow(model.alpha * (1.0 - model.p), n);
    return int_pow(model.q(), n) * int_pow(abar, n - 1) / denom;
  };
  GapBounds out;
  if (model.p == 0.5) {
    out.lower = 0.0;
    out.upper = model.alpha / (2.0 * abar);
  } else {
    out.lower = (abar - eps) * (phi(1) - phi(model.n));
  }
  return out;
}

static MarkovBounds markov_bounds_impl(const MarkovModel& model, double eps,
                                       bool strict) {
  if (model.n % 2 == 0) {
    throw ValidationError("underline_h_n_markov_bounds: n must be odd");
  }
  if (!model.mixing_hypothesis()) {
    throw ValidationError(
        "underline_h_n_markov_bounds: requires r/(1-r) < "
        "(alpha/(1-alpha))^(n-1)");
  }
  int n = model.n;
  double t = pc_markov_cond(model);
  double eps_n = int_pow(eps, n);
  if (eps_n > t + kDomainSlack ||
      eps_n < model.pc_x() - kDomainSlack) {
    throw ValidationError(
        "underline_h_n_markov_bounds: eps^n outside [Pc(X^n), Pc(X^n|Y^n)]");
  }
  double abar = 1.0 - model.alpha, rbar = 1.0 - model.r;
  double denom = model.p * int_pow(abar * rbar, n) -
                 (1.0 - model.p) * int_pow(model.alpha * rbar, n);
  double zeta = snap_unit(rbar * (t - eps_n) / denom);

  VectorPoint vp;
  vp.eps_n = eps_n;
  vp.zeta = zeta;
  vp.value_n = 1.0 - zeta * pr_yn_all_ones(model);

  MarkovBounds out;
  out.upper = std::pow(1.0 - zeta * int_pow(model.alpha, n), 1.0 / n);
  if (model.n <= kMaxVectorBits && zeta <= 1.0) {
    JointPmf joint = markov_joint(model);
    out.lower = finish_vector_point(&joint, n, eps, vp, strict,
                                    "underline_h_n_markov_bounds");
  } else {
    out.lower = finish_vector_point(nullptr, n, eps, vp, strict,
                                    "underline_h_n_markov_bounds");
  }
  return out;
}

MarkovBounds underline_h_n_markov_bounds(const MarkovModel& model,
                                         double eps) {
  return markov_bounds_impl(model, eps, true);
}

MarkovBounds underline_h_n_markov_bounds_formula(const MarkovModel& model,
                                                 double eps) {
  return markov_bounds_impl(model, eps, false);
}

static TradeoffPoint parametric_impl(const ParametricModel& model, double eps,
                                     bool strict) {
  int n = model.n;
  double t = model.pc_theta_given_yn();
  double eps_n = int_pow(eps, n);
  if (eps_n > t + kDomainSlack || eps_n < model.p - kDomainSlack) {
    throw ValidationError(
        "parametric_h_n: eps^n outside [Pc(theta), Pc(theta|Y^n)]");
  }
  double abar = 1.0 - model.alpha;
  double denom = model.p * int_pow(abar, n) -
                 (1.0 - model.p) * int_pow(model.alpha, n);
  VectorPoint vp;
  vp.eps_n = eps_n;
  vp.zeta = snap_unit((t - eps_n) / denom);
  vp.value_n = 1.0 - vp.zeta * (model.p * int_pow(abar, n) +
                                (1.0 - model.p) * int_pow(model.alpha, n));
  if (model.n <= kMaxVectorBits && vp.zeta <= 1.0) {
    JointPmf joint = parametric_joint(model);
    return finish_vector_point(&joint, n, eps, vp, strict, "parametric_h_n");
  }
  return finish_vector_point(nullptr, n, eps, vp, strict, "parametric_h_n");
}

TradeoffPoint parametric_h_n(const ParametricModel& model, double eps) {
  return parametric_impl(model, eps, true);
}

TradeoffPoint parametric_h_n_formula(const ParametricModel& model,
                                     double eps) {
  return parametric_impl(model, eps, false);
}

}  // namespace privguess
