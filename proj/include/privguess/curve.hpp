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

#ifndef PRIVGUESS_CURVE_HPP_
#define PRIVGUESS_CURVE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "privguess/pmf.hpp"

namespace privguess {

enum class Regime {
  kZChannel,
  kReverseZChannel,
  kNaryZ,
  kOracleOnly,
  kTrivial,
};

std::string regime_name(Regime r);

struct TradeoffPoint {
  double epsilon = 0.0;
  double utility = 0.0;
  Regime regime = Regime::kOracleOnly;
  std::optional<Channel> filter;
  // Crossover parameter of the achieving channel, kept even when the filter
  // table itself is not materialized (large alphabets).
  double filter_param = 0.0;
  // True when evaluate_filter on the attached channel reproduced
  // (epsilon, utility) within 1e-9. Exact certificate, oracle-free.
  bool achieved = false;
};

struct TradeoffCurve {
  std::vector<TradeoffPoint> points;
  double eps_min = 0.0;
  double eps_max = 0.0;
};

// Knot locations of a sampled piecewise-linear curve: epsilons where the
// finite-difference slope jumps by more than `tol`. Needs >= 20 samples.
std::vector<double> detect_breakpoints(const TradeoffCurve& curve, double tol);

}  // namespace privguess

#endif  // PRIVGUESS_CURVE_HPP_
