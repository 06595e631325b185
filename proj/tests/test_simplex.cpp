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

#include <doctest.h>

#include "privguess/simplex.hpp"

using namespace privguess;

TEST_CASE("two-constraint maximization") {
  LpProblem p;
  p.num_vars = 2;
  p.objective = {1.0, 1.0};
  p.le_rows = {{1.0, 2.0}, {3.0, 1.0}};
  p.le_rhs = {4.0, 6.0};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(2.8).epsilon(1e-10));
  CHECK(r.x[0] == doctest::Approx(1.6).epsilon(1e-10));
  CHECK(r.x[1] == doctest::Approx(1.2).epsilon(1e-10));
  CHECK(r.max_residual < 1e-9);
}

TEST_CASE("equality constraints") {
  LpProblem p;
  p.num_vars = 2;
  p.objective = {1.0, 0.0};
  p.eq_rows = {{1.0, 1.0}};
  p.eq_rhs = {1.0};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.max_residual < 1e-9);
}

TEST_CASE("redundant equality rows are tolerated") {
  LpProblem p;
  p.num_vars = 3;
  p.objective = {2.0, 1.0, 0.0};
  p.eq_rows = {{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}};
  p.eq_rhs = {1.0, 1.0};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("infeasible system is reported") {
  LpProblem p;
  p.num_vars = 2;
  p.objective = {1.0, 1.0};
  p.eq_rows = {{1.0, 1.0}};
  p.eq_rhs = {2.0};
  p.le_rows = {{1.0, 1.0}};
  p.le_rhs = {1.0};
  LpResult r = solve_lp(p);
  CHECK(r.status == LpStatus::kInfeasible);
}

TEST_CASE("objective certificate equals recomputation") {
  LpProblem p;
  p.num_vars = 4;
  p.objective = {0.3, 0.9, 0.1, 0.5};
  p.eq_rows = {{1.0, 1.0, 1.0, 1.0}};
  p.eq_rhs = {1.0};
  p.le_rows = {{0.8, 0.4, 0.2, 0.6}};
  p.le_rhs = {0.5};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  double recomputed = 0.0;
  for (std::size_t j = 0; j < 4; ++j) recomputed += p.objective[j] * r.x[j];
  CHECK(r.objective == doctest::Approx(recomputed).epsilon(1e-15));
  CHECK(r.max_residual < 1e-9);
}
