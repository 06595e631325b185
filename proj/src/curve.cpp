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

#include "privguess/curve.hpp"

#include <cmath>

namespace privguess {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::kZChannel: return "z";
    case Regime::kReverseZChannel: return "reverse_z";
    case Regime::kNaryZ: return "nary_z";
    case Regime::kOracleOnly: return "oracle";
    case Regime::kTrivial: return "trivial";
  }
  return "unknown";
}

std::vector<double> detect_breakpoints(const TradeoffCurve& curve,
                                       double tol) {
  const auto& pts = curve.points;
  if (pts.size() < 20) {
    throw ValidationError("detect_breakpoints: need at least 20 samples");
  }
  std::vector<double> slopes;
  slopes.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double de = pts[i + 1].epsilon - pts[i].epsilon;
    if (!(de > 0.0)) {
      throw ValidationError("detect_breakpoints: epsilon must increase");
    }
    slopes.push_back((pts[i + 1].utility - pts[i].utility) / de);
  }
  std::vector<double> knots;
  for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
    if (std::abs(slopes[i + 1] - slopes[i]) > tol) {
      knots.push_back(pts[i + 1].epsilon);
    }
  }
  return knots;
}

}  // namespace privguess
