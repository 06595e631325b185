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

#include "privguess/channels.hpp"

#include <algorithm>
#include <string>

namespace privguess {

namespace {

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0,1]");
  }
}

}  // namespace

Channel make_bibo(double alpha, double beta) {
  check_unit(alpha, "alpha");
  check_unit(beta, "beta");
  return Channel(2, 2, {1.0 - alpha, alpha, beta, 1.0 - beta});
}

Channel make_bsc(double alpha) { return make_bibo(alpha, alpha); }

Channel make_z(double beta) {
  check_unit(beta, "beta");
  return Channel(2, 2, {1.0, 0.0, beta, 1.0 - beta});
}

Channel make_reverse_z(double beta) {
  check_unit(beta, "beta");
  return Channel(2, 2, {1.0 - beta, beta, 0.0, 1.0});
}

Channel make_nary_z(std::size_t y0, std::size_t z0, double gamma,
                    std::size_t n) {
  check_unit(gamma, "gamma");
  if (y0 >= n || z0 >= n) throw ValidationError("nary_z: symbol out of range");
  if (y0 == z0) throw ValidationError("nary_z: y0 and z0 must differ");
  std::vector<double> rows(n * n, 0.0);
  for (std::size_t y = 0; y < n; ++y) rows[y * n + y] = 1.0;
  rows[y0 * n + y0] = 1.0 - gamma;
  rows[y0 * n + z0] = gamma;
  return Channel(n, n, std::move(rows));
}

Channel make_z2n(double gamma, int bits) {
  if (bits < 1 || bits > kMaxVectorBits) {
    throw ValidationError("z2n: bits must lie in [1, " +
                          std::to_string(kMaxVectorBits) + "]");
  }
  std::size_t n = std::size_t{1} << bits;
  return make_nary_z(n - 1, 0, gamma, n);
}

LeakagePair evaluate_nary_z(const JointPmf& joint, std::size_t y0,
                            std::size_t z0, double gamma) {
  if (y0 >= joint.n || z0 >= joint.n || y0 == z0) {
    throw ValidationError("evaluate_nary_z: bad (y0, z0)");
  }
  check_unit(gamma, "gamma");
  double privacy = 0.0;
  for (std::size_t z = 0; z < joint.n; ++z) {
    double best = 0.0;
    if (z == y0) {
      for (std::size_t x = 0; x < joint.m; ++x)
        best = std::max(best, joint.at(x, y0) * (1.0 - gamma));
    } else if (z == z0) {
      // Mirror the dense accumulation order so both paths agree bit-level.
      for (std::size_t x = 0; x < joint.m; ++x) {
        double v = z0 < y0 ? joint.at(x, z0) + joint.at(x, y0) * gamma
                           : joint.at(x, y0) * gamma + joint.at(x, z0);
        best = std::max(best, v);
      }
    } else {
      for (std::size_t x = 0; x < joint.m; ++x)
        best = std::max(best, joint.at(x, z));
    }
    privacy += best;
  }
  std::vector<double> q = joint.y_marginal();
  double utility = 0.0;
  for (std::size_t z = 0; z < joint.n; ++z) {
    if (z == y0) {
      utility += q[y0] * (1.0 - gamma);
    } else if (z == z0) {
      utility += std::max(q[z0], q[y0] * gamma);
    } else {
      utility += q[z];
    }
  }
  return LeakagePair{privacy, utility};
}

}  // namespace privguess
