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

#ifndef PRIVGUESS_SIMPLEX_HPP_
#define PRIVGUESS_SIMPLEX_HPP_

#include <cstddef>
#include <vector>

namespace privguess {

// max c.x  subject to  eq_rows x = eq_rhs,  le_rows x <= le_rhs,  x >= 0.
struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> le_rows;
  std::vector<double> le_rhs;
  std::vector<double> objective;
};

enum class LpStatus { kOptimal, kInfeasible, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  // max |Ax - b| over all constraint rows for the returned point.
  double max_residual = 0.0;
};

// Two-phase dense tableau simplex with Bland's anti-cycling rule. Intended
// for small row counts (a handful) against many columns, which is exactly
// the shape of the posterior-grid relaxations solved here.
LpResult solve_lp(const LpProblem& problem, double tol = 1e-11,
                  long max_iters = 200000);

}  // namespace privguess

#endif  // PRIVGUESS_SIMPLEX_HPP_
