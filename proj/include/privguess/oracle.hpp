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

#ifndef PRIVGUESS_ORACLE_HPP_
#define PRIVGUESS_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "privguess/curve.hpp"
#include "privguess/pmf.hpp"

namespace privguess {

// Posteriors q' over Y on the denominator-G simplex grid, scored by
//   s(q') = max_x sum_y P(x|y) q'(y)   (privacy of the atom)
//   t(q') = max_y q'(y)                (utility of the atom)
// Zero-mass Y symbols are stripped before gridding. The exact marginal q_Y
// is appended as one extra point so eps = Pc(X) stays feasible at any
// resolution.
struct PosteriorGrid {
  std::size_t ny = 0;               // symbols kept
  int resolution = 0;
  std::vector<std::size_t> symbols;  // kept index -> original y
  std::vector<std::vector<double>> points;
  std::vector<double> s;
  std::vector<double> t;
};

// 256 for binary, 64 for 3..4 symbols, 24 for 5..6.
int default_resolution(std::size_t ny);

PosteriorGrid build_posterior_grid(const JointPmf& joint, int resolution);

struct LpWeight {
  std::size_t grid_index = 0;
  double weight = 0.0;
};

enum class OracleStatus { kOptimal, kInfeasible };

struct LpSolution {
  double value = 0.0;
  std::vector<LpWeight> weights;
  OracleStatus status = OracleStatus::kInfeasible;
  double max_residual = 0.0;
};

// Ground-truth value of the tradeoff at eps: maximize sum w_i t_i subject
// to sum w_i s_i <= eps, sum w_i q'_i = q_Y, w in the simplex. A lower
// bound on the true curve that is monotone in the grid resolution.
LpSolution oracle_h(const JointPmf& joint, double eps, int resolution = 0);
LpSolution oracle_h_on_grid(const JointPmf& joint, const PosteriorGrid& grid,
                            double eps);

// Rebuilds a filter from LP weights by Bayes inversion: P_Z(z) = w_z and
// P_{Y|Z}(.|z) = q'_z. Atoms below 1e-12 weight are dropped.
Channel solution_filter(const JointPmf& joint, const PosteriorGrid& grid,
                        const LpSolution& solution);

// Uniform eps grid over [Pc(X), Pc(X|Y)]; collapses to one point when the
// domain is a single value. `threads` caps parallel per-point solves; the
// result is identical for any thread count.
TradeoffCurve oracle_curve(const JointPmf& joint, int num_points,
                           int resolution = 0, int threads = 1);

// Best of `budget` random row-stochastic N x (N+1) filters meeting the
// privacy constraint, refined by coordinate ascent. Candidate i draws from
// seed ^ i. Identity-shaped and constant filters are always included.
TradeoffPoint random_filter_search(const JointPmf& joint, double eps,
                                   int budget, std::uint64_t seed);

// Same search restricted to square (same-alphabet) filters, with the
// N-ary Z family swept deterministically on a crossover grid and refined
// by bisection to the privacy boundary.
TradeoffPoint oracle_underline_h(const JointPmf& joint, double eps,
                                 int budget, std::uint64_t seed);

}  // namespace privguess

#endif  // PRIVGUESS_ORACLE_HPP_
