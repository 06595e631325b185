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

#ifndef PRIVGUESS_PMF_HPP_
#define PRIVGUESS_PMF_HPP_

#include <cstddef>
#include <vector>

#include "privguess/errors.hpp"

namespace privguess {

// Absolute tolerance on probability sums. Inputs further off than this are
// rejected unless renormalization is explicitly requested.
inline constexpr double kPmfSumTol = 1e-9;

// Finite joint distribution over {0..m-1} x {0..n-1}, row-major.
// Immutable after construction; all operations on it are pure functions.
struct JointPmf {
  std::size_t m = 0;  // |X|
  std::size_t n = 0;  // |Y|
  std::vector<double> p;  // p[x*n + y]

  JointPmf() = default;
  JointPmf(std::size_t m_in, std::size_t n_in, std::vector<double> probs,
           bool normalize = false);

  double at(std::size_t x, std::size_t y) const { return p[x * n + y]; }

  std::vector<double> x_marginal() const;
  std::vector<double> y_marginal() const;
};

// Row-stochastic conditional table; row y is P(z | y) over {0..k-1}.
struct Channel {
  std::size_t n = 0;  // inputs
  std::size_t k = 0;  // outputs
  std::vector<double> rows;  // rows[y*k + z]

  Channel() = default;
  Channel(std::size_t n_in, std::size_t k_in, std::vector<double> rows_in);

  double at(std::size_t y, std::size_t z) const { return rows[y * k + z]; }

  static Channel identity(std::size_t n);
};

struct LeakagePair {
  double privacy = 0.0;  // Pc(X|Z)
  double utility = 0.0;  // Pc(Y|Z)
};

// max_u p(u); rejects non-normalized or negative input.
double pc_marginal(const std::vector<double>& p);

// sum_z max_x P(x,z) over a joint of (X, Z). Always >= pc_marginal(p_X).
double pc_conditional(const JointPmf& joint);

// Joint of (X, Z) for Z drawn through `filter` from the Y coordinate.
// Requires filter.n == joint.n.
JointPmf compose_filter(const JointPmf& joint, const Channel& filter);

// privacy = pc_conditional of the composed joint; utility evaluated on the
// Y marginal: sum_z max_y q(y) F(y,z).
LeakagePair evaluate_filter(const JointPmf& joint, const Channel& filter);

// log2(Pc(X|Z) / Pc(X)), clamped at 0; 0 by convention for point-mass X.
double arimoto_infty(const JointPmf& joint);

// Translates a guessing value h(2^eps * Pc(X)) into the order-infinity
// leakage curve: log2(h_value / Pc(Y)). The caller supplies h_value.
double g_infty_from_h(double h_value, double eps_exponent,
                      const JointPmf& joint);

// Joint built from a prior on X and a channel P(Y|X).
JointPmf joint_from_prior_channel(const std::vector<double>& prior,
                                  const Channel& ch);

// Product joint; `a` occupies the low-order digits of the combined index,
// so for binary factors bit 0 of the index is the first coordinate.
JointPmf tensor_product(const JointPmf& a, const JointPmf& b);
Channel tensor_product(const Channel& a, const Channel& b);
Channel tensor_power(const Channel& a, int n);

}  // namespace privguess

#endif  // PRIVGUESS_PMF_HPP_
