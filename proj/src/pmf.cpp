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

#include "privguess/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace privguess {

namespace {

void check_pmf_mass(const std::vector<double>& p, const char* what) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw ValidationError(std::string(what) +
                            ": entries must be finite and non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kPmfSumTol) {
    throw ValidationError(std::string(what) + ": mass sums to " +
                          std::to_string(sum) + ", expected 1 within 1e-9");
  }
}

}  // namespace

JointPmf::JointPmf(std::size_t m_in, std::size_t n_in,
                   std::vector<double> probs, bool normalize)
    : m(m_in), n(n_in), p(std::move(probs)) {
  if (m < 1 || n < 1) throw ValidationError("JointPmf: alphabet sizes must be >= 1");
  if (p.size() != m * n) throw ValidationError("JointPmf: table size mismatch");
  if (normalize) {
    double sum = 0.0;
    for (double v : p) {
      if (v < 0.0 || !std::isfinite(v)) {
        throw ValidationError("JointPmf: entries must be finite and non-negative");
      }
      sum += v;
    }
    if (sum <= 0.0) throw ValidationError("JointPmf: cannot normalize zero mass");
    for (double& v : p) v /= sum;
  }
  check_pmf_mass(p, "JointPmf");
}

std::vector<double> JointPmf::x_marginal() const {
  std::vector<double> out(m, 0.0);
  for (std::size_t x = 0; x < m; ++x) {
    double s = 0.0;
    for (std::size_t y = 0; y < n; ++y) s += at(x, y);
    out[x] = s;
  }
  return out;
}

std::vector<double> JointPmf::y_marginal() const {
  std::vector<double> out(n, 0.0);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < n; ++y) out[y] += at(x, y);
  return out;
}

Channel::Channel(std::size_t n_in, std::size_t k_in,
                 std::vector<double> rows_in)
    : n(n_in), k(k_in), rows(std::move(rows_in)) {
  if (n < 1 || k < 1) throw ValidationError("Channel: alphabet sizes must be >= 1");
  if (rows.size() != n * k) throw ValidationError("Channel: table size mismatch");
  for (std::size_t y = 0; y < n; ++y) {
    double sum = 0.0;
    for (std::size_t z = 0; z < k; ++z) {
      double v = at(y, z);
      if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
        throw ValidationError("Channel: entry outside [0,1] in row " +
                              std::to_string(y));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kPmfSumTol) {
      throw ValidationError("Channel: row " + std::to_string(y) +
                            " sums to " + std::to_string(sum));
    }
  }
}

Channel Channel::identity(std::size_t n) {
  std::vector<double> rows(n * n, 0.0);
  for (std::size_t y = 0; y < n; ++y) rows[y * n + y] = 1.0;
  return Channel(n, n, std::move(rows));
}

double pc_marginal(const std::vector<double>& p) {
  if (p.empty()) throw ValidationError("pc_marginal: empty pmf");
  check_pmf_mass(p, "pc_marginal");
  return *std::max_element(p.begin(), p.end());
}

double pc_conditional(const JointPmf& joint) {
  double total = 0.0;
  for (std::size_t z = 0; z < joint.n; ++z) {
    double best = 0.0;
    for (std::size_t x = 0; x < joint.m; ++x)
      best = std::max(best, joint.at(x, z));
    total += best;
  }
  return total;
}

JointPmf compose_filter(const JointPmf& joint, const Channel& filter) {
  if (filter.n != joint.n) {
    throw ValidationError("compose_filter: filter expects " +
                          std::to_string(filter.n) + " inputs, joint has " +
                          std::to_string(joint.n));
  }
  std::vector<double> out(joint.m * filter.k, 0.0);
  for (std::size_t x = 0; x < joint.m; ++x) {
    for (std::size_t z = 0; z < filter.k; ++z) {
      double s = 0.0;
      for (std::size_t y = 0; y < joint.n; ++y)
        s += joint.at(x, y) * filter.at(y, z);
      out[x * filter.k + z] = s;
    }
  }
  return JointPmf(joint.m, filter.k, std::move(out));
}

LeakagePair evaluate_filter(const JointPmf& joint, const Channel& filter) {
  JointPmf xz = compose_filter(joint, filter);
  LeakagePair result;
  result.privacy = pc_conditional(xz);
  std::vector<double> q = joint.y_marginal();
  double utility = 0.0;
  for (std::size_t z = 0; z < filter.k; ++z) {
    double best = 0.0;
    for (std::size_t y = 0; y < joint.n; ++y)
      best = std::max(best, q[y] * filter.at(y, z));
    utility += best;
  }
  result.utility = utility;
  return result;
}

double arimoto_infty(const JointPmf& joint) {
  std::vector<double> px = joint.x_marginal();
  double pc_x = *std::max_element(px.begin(), px.end());
  if (pc_x >= 1.0 - 1e-15) return 0.0;  // point mass: defined as 0
  double ratio = pc_conditional(joint) / pc_x;
  return std::max(0.0, std::log2(ratio));
}

double g_infty_from_h(double h_value, double eps_exponent,
                      const JointPmf& joint) {
  if (!(h_value > 0.0 && h_value <= 1.0 + 1e-12)) {
    throw ValidationError("g_infty_from_h: h_value must lie in (0,1]");
  }
  std::vector<double> px = joint.x_marginal();
  double pc_x = *std::max_element(px.begin(), px.end());
  double mapped = std::exp2(eps_exponent) * pc_x;
  if (mapped < pc_x - 1e-12 || mapped > 1.0 + 1e-12) {
    throw ValidationError(
        "g_infty_from_h: 2^eps * Pc(X) falls outside [Pc(X), 1]");
  }
  std::vector<double> qy = joint.y_marginal();
  double pc_y = *std::max_element(qy.begin(), qy.end());
  return std::log2(h_value / pc_y);
}

JointPmf joint_from_prior_channel(const std::vector<double>& prior,
                                  const Channel& ch) {
  if (prior.size() != ch.n) {
    throw ValidationError("joint_from_prior_channel: prior/channel mismatch");
  }
  check_pmf_mass(prior, "joint_from_prior_channel");
  std::vector<double> out(ch.n * ch.k, 0.0);
  for (std::size_t x = 0; x < ch.n; ++x)
    for (std::size_t z = 0; z < ch.k; ++z)
      out[x * ch.k + z] = prior[x] * ch.at(x, z);
  return JointPmf(ch.n, ch.k, std::move(out));
}

JointPmf tensor_product(const JointPmf& a, const JointPmf& b) {
  std::size_t m = a.m * b.m;
  std::size_t n = a.n * b.n;
  std::vector<double> out(m * n, 0.0);
  for (std::size_t xb = 0; xb < b.m; ++xb)
    for (std::size_t xa = 0; xa < a.m; ++xa)
      for (std::size_t yb = 0; yb < b.n; ++yb)
        for (std::size_t ya = 0; ya < a.n; ++ya) {
          std::size_t x = xa + xb * a.m;
          std::size_t y = ya + yb * a.n;
          out[x * n + y] = a.at(xa, ya) * b.at(xb, yb);
        }
  return JointPmf(m, n, std::move(out));
}

Channel tensor_product(const Channel& a, const Channel& b) {
  std::size_t n = a.n * b.n;
  std::size_t k = a.k * b.k;
  std::vector<double> out(n * k, 0.0);
  for (std::size_t yb = 0; yb < b.n; ++yb)
    for (std::size_t ya = 0; ya < a.n; ++ya)
      for (std::size_t zb = 0; zb < b.k; ++zb)
        for (std::size_t za = 0; za < a.k; ++za) {
          std::size_t y = ya + yb * a.n;
          std::size_t z = za + zb * a.k;
          out[y * k + z] = a.at(ya, za) * b.at(yb, zb);
        }
  return Channel(n, k, std::move(out));
}

Channel tensor_power(const Channel& a, int n) {
  if (n < 1) throw ValidationError("tensor_power: n must be >= 1");
  Channel out = a;
  for (int i = 1; i < n; ++i) out = tensor_product(out, a);
  return out;
}

}  // namespace privguess
