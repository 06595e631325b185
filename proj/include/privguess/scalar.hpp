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

#ifndef PRIVGUESS_SCALAR_HPP_
#define PRIVGUESS_SCALAR_HPP_

#include <cstddef>

#include "privguess/channels.hpp"
#include "privguess/curve.hpp"
#include "privguess/pmf.hpp"

namespace privguess {

// X ~ Bernoulli(p) observed through a binary channel with crossovers
// alpha (on 0) and beta (on 1). p in [0.5, 1), alpha, beta in [0, 0.5).
struct BinaryScalarModel {
  double p;
  double alpha;
  double beta;

  BinaryScalarModel(double p_in, double alpha_in, double beta_in);

  // (1-a)(1-p) <= b p collapses the tradeoff: Pc(X|Y) = Pc(X), h == 1.
  bool trivial_regime() const;
  // a(1-a)(1-p)^2 < b(1-b)p^2 selects the Z-channel branch; ties go to the
  // reverse branch.
  bool z_branch() const;
  double q() const;             // P(Y = 1)
  double pc_x() const { return p; }
  double pc_x_given_y() const;  // max(a̅p̅, bp) + b̅p
  JointPmf joint() const;       // 2x2 P(x, y)
};

// Exact tradeoff value and an achieving filter; the filter is re-evaluated
// through evaluate_filter and must reproduce (eps, utility) within 1e-9.
TradeoffPoint h_binary(const BinaryScalarModel& model, double eps);

// True iff utility above Pc(Y) is possible at eps = Pc(X).
bool perfect_privacy_nontrivial(const BinaryScalarModel& model);

struct UnderlineSlope {
  double slope = 0.0;
  std::size_t y0 = 0;
  std::size_t z0 = 0;
};

// Right-endpoint derivative of the same-alphabet tradeoff:
// min over (y, z) of q(y) / (P(x_y, y) - P(x_z, y)), self pairs excluded by
// the x/0 = +inf convention. Requires q(y) > 0 and a strict column argmax
// everywhere; ties break to the lexicographically smallest (y, z).
UnderlineSlope underline_h_slope(const JointPmf& joint);

// Linear-regime value 1 - (Pc(X|Y) - eps) * slope with the achieving
// N-ary Z filter. Throws RegimeError when the implied crossover exceeds 1.
TradeoffPoint underline_h_linear(const JointPmf& joint, double eps);

// Same value over the whole domain, with the filter attached only where it
// is a valid channel; `achieved` records whether the exact certificate
// passed. Used for plotting the algebraic curve past the certified range.
TradeoffPoint underline_h_linear_formula(const JointPmf& joint, double eps);

}  // namespace privguess

#endif  // PRIVGUESS_SCALAR_HPP_
