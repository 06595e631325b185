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

#ifndef PRIVGUESS_VECTOR_MODELS_HPP_
#define PRIVGUESS_VECTOR_MODELS_HPP_

#include <optional>
#include <vector>

#include "privguess/channels.hpp"
#include "privguess/curve.hpp"
#include "privguess/pmf.hpp"

namespace privguess {

// Closed forms stay scalar up to n = 20; joint tables are materialized only
// up to 2^12 (kMaxVectorBits).
inline constexpr int kMaxClosedFormN = 20;

// X^n i.i.d. Bernoulli(p), Y_k = X_k xor Bernoulli(alpha). Requires
// 1 - alpha > p so the tradeoff does not collapse.
struct IidModel {
  int n;
  double p;
  double alpha;
  IidModel(int n_in, double p_in, double alpha_in);
  double q() const { return alpha * (1.0 - p) + (1.0 - alpha) * p; }
  double pc_x() const;           // p^n
  double pc_x_given_y() const;   // (1-alpha)^n
};

// X_1 ~ Bernoulli(p), X_k = X_{k-1} xor Bernoulli(r); Y_k as above.
// The joint is defined for any n >= 1; the guessing closed forms below
// additionally require odd n.
struct MarkovModel {
  int n;
  double p;
  double alpha;
  double r;
  MarkovModel(int n_in, double p_in, double alpha_in, double r_in);
  // r / (1-r) < (alpha / (1-alpha))^(n-1), needed by the bound formulas.
  bool mixing_hypothesis() const;
  double pc_x() const;  // p * (1-r)^(n-1)
};

// r = 0 specialization: a private parameter theta ~ Bernoulli(p) with n
// i.i.d. observations through BSC(alpha).
struct ParametricModel {
  int n;
  double p;
  double alpha;
  ParametricModel(int n_in, double p_in, double alpha_in);
  double pc_theta() const { return p; }
  double pc_theta_given_yn() const;
};

// Joint of (X^n, Y^n) over {0,1}^n x {0,1}^n; index bit k is coordinate k.
// Built as a tensor power so factor structure is preserved bit-exactly.
JointPmf iid_joint(const IidModel& model);

JointPmf markov_joint(const MarkovModel& model);

// 2 x 2^n joint of (theta, Y^n).
JointPmf parametric_joint(const ParametricModel& model);

// prod_k Pc(X_k | Z_k) for independent pairs.
double pc_product(const std::vector<JointPmf>& factors);

// Pc(X^n | Y^n) for the Markov model, odd n.
double pc_markov_cond(const MarkovModel& model);

double pr_yn_all_ones(const MarkovModel& model);

// Per-symbol tradeoff achieved by the 2^n-ary Z-channel:
//   value^n = 1 - zeta_n(eps) q^n,
//   zeta_n = ((1-a)^n - eps^n) / (((1-a)p)^n - (a(1-p))^n).
// The strict variant throws RegimeError when zeta_n > 1; the formula
// variant evaluates everywhere in [p, 1-alpha] and reports `achieved`.
TradeoffPoint underline_h_n_iid(const IidModel& model, double eps);
TradeoffPoint underline_h_n_iid_formula(const IidModel& model, double eps);

// Best memoryless (per-coordinate) filter; value does not depend on n.
TradeoffPoint h_n_memoryless(const IidModel& model, double eps);

struct GapBounds {
  double lower = 0.0;
  std::optional<double> upper;  // only for p == 1/2
};
// Bounds on underline_h_n - h_n_memoryless in the linear regime.
GapBounds gap_bounds(const IidModel& model, double eps);

struct MarkovBounds {
  TradeoffPoint lower;  // achieved by the 2^n-ary Z-channel
  double upper = 0.0;   // per-symbol
};
MarkovBounds underline_h_n_markov_bounds(const MarkovModel& model, double eps);
MarkovBounds underline_h_n_markov_bounds_formula(const MarkovModel& model,
                                                 double eps);

TradeoffPoint parametric_h_n(const ParametricModel& model, double eps);
TradeoffPoint parametric_h_n_formula(const ParametricModel& model, double eps);

}  // namespace privguess

#endif  // PRIVGUESS_VECTOR_MODELS_HPP_
