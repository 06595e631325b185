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

#include "privguess/scalar.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace privguess {

namespace {

constexpr double kCertTol = 1e-9;
constexpr double kDomainSlack = 1e-12;

// Cancellation in (T - eps)/denom can push a boundary crossover a few ulps
// past [0, 1]; snap it back within certificate tolerance.
double snap_unit(double z) {
  if (z > 1.0 && z <= 1.0 + 1e-9) return 1.0;
  if (z < 0.0 && z >= -1e-9) return 0.0;
  return z;
}

void certify(const JointPmf& joint, const Channel& filter, double eps,
             double utility) {
  LeakagePair lp = evaluate_filter(joint, filter);
  if (std::abs(lp.privacy - eps) > kCertTol ||
      std::abs(lp.utility - utility) > kCertTol) {
    throw std::logic_error(
        "achievability certificate failed: filter reproduces (" +
        std::to_string(lp.privacy) + ", " + std::to_string(lp.utility) +
        ") instead of (" + std::to_string(eps) + ", " +
        std::to_string(utility) + ")");
  }
}

}  // namespace

BinaryScalarModel::BinaryScalarModel(double p_in, double alpha_in,
                                     double beta_in)
    : p(p_in), alpha(alpha_in), beta(beta_in) {
  if (!(p >= 0.5 && p < 1.0)) {
    throw ValidationError("BinaryScalarModel: p must lie in [0.5, 1)");
  }
  if (!(alpha >= 0.0 && alpha < 0.5)) {
    throw ValidationError("BinaryScalarModel: alpha must lie in [0, 0.5)");
  }
  if (!(beta >= 0.0 && beta < 0.5)) {
    throw ValidationError("BinaryScalarModel: beta must lie in [0, 0.5)");
  }
}

bool BinaryScalarModel::trivial_regime() const {
  return !((1.0 - alpha) * (1.0 - p) > beta * p);
}

bool BinaryScalarModel::z_branch() const {
  double pbar = 1.0 - p;
  return alpha * (1.0 - alpha) * pbar * pbar < beta * (1.0 - beta) * p * p;
}

double BinaryScalarModel::q() const {
  return alpha * (1.0 - p) + (1.0 - beta) * p;
}

double BinaryScalarModel::pc_x_given_y() const {
  double abar_pbar = (1.0 - alpha) * (1.0 - p);
  double beta_p = beta * p;
  return std::max(abar_pbar, beta_p) + (1.0 - beta) * p;
}

JointPmf BinaryScalarModel::joint() const {
  double pbar = 1.0 - p;
  return JointPmf(2, 2,
                  {pbar * (1.0 - alpha), pbar * alpha, p * beta,
                   p * (1.0 - beta)});
}

TradeoffPoint h_binary(const BinaryScalarModel& model, double eps) {
  TradeoffPoint pt;
  pt.epsilon = eps;
  if (model.trivial_regime()) {
    if (eps < model.p - kDomainSlack) {
      throw ValidationError("h_binary: eps below Pc(X)");
    }
    pt.utility = 1.0;
    pt.regime = Regime::kTrivial;
    pt.filter = Channel::identity(2);
    pt.filter_param = 0.0;
    pt.achieved = true;
    return pt;
  }
  double lo = model.pc_x();
  double hi = model.pc_x_given_y();
  if (eps < lo - kDomainSlack || eps > hi + kDomainSlack) {
    throw ValidationError("h_binary: eps outside [Pc(X), Pc(X|Y)] = [" +
                          std::to_string(lo) + ", " + std::to_string(hi) +
                          "]");
  }
  double p = model.p, pbar = 1.0 - p;
  double abar = 1.0 - model.alpha, bbar = 1.0 - model.beta;
  double q = model.q();
  if (model.z_branch()) {
    double zeta = snap_unit((hi - eps) / (bbar * p - model.alpha * pbar));
    pt.utility = 1.0 - zeta * q;
    pt.regime = Regime::kZChannel;
    pt.filter = make_z(zeta);
    pt.filter_param = zeta;
  } else {
    double zeta = snap_unit((hi - eps) / (abar * pbar - model.beta * p));
    pt.utility = 1.0 - zeta * (1.0 - q);
    pt.regime = Regime::kReverseZChannel;
    pt.filter = make_reverse_z(zeta);
    pt.filter_param = zeta;
  }
  certify(model.joint(), *pt.filter, eps, pt.utility);
  pt.achieved = true;
  return pt;
}

bool perfect_privacy_nontrivial(const BinaryScalarModel& model) {
  if (model.trivial_regime()) return false;
  return model.z_branch() && model.p > 0.5;
}

UnderlineSlope underline_h_slope(const JointPmf& joint) {
  std::vector<double> q = joint.y_marginal();
  std::vector<std::size_t> argmax(joint.n);
  for (std::size_t y = 0; y < joint.n; ++y) {
    if (!(q[y] > 0.0)) {
      throw ValidationError("underline_h_slope: q(" + std::to_string(y) +
                            ") = 0");
    }
    std::size_t best = 0;
    bool tie = false;
    for (std::size_t x = 1; x < joint.m; ++x) {
      if (joint.at(x, y) > joint.at(best, y)) {
        best = x;
        tie = false;
      } else if (joint.at(x, y) == joint.at(best, y)) {
        tie = true;
      }
    }
    if (tie) {
      throw ValidationError("underline_h_slope: column " + std::to_string(y) +
                            " has a tied argmax");
    }
    argmax[y] = best;
  }
  double pc_y_cols = 0.0;
  for (std::size_t y = 0; y < joint.n; ++y) pc_y_cols += joint.at(argmax[y], y);
  std::vector<double> px = joint.x_marginal();
  double pc_x = 0.0;
  for (double v : px) pc_x = std::max(pc_x, v);
  if (!(pc_y_cols > pc_x + 1e-12)) {
    throw ValidationError(
        "underline_h_slope: degenerate tradeoff, Pc(X) == Pc(X|Y)");
  }

  UnderlineSlope result;
  result.slope = std::numeric_limits<double>::infinity();
  for (std::size_t y = 0; y < joint.n; ++y) {
    for (std::size_t z = 0; z < joint.n; ++z) {
      double denom = joint.at(argmax[y], y) - joint.at(argmax[z], y);
      if (!(denom > 0.0)) continue;  // x/0 = +inf convention, never minimal
      double value = q[y] / denom;
      if (value < result.slope) {
        result.slope = value;
        result.y0 = y;
        result.z0 = z;
      }
    }
  }
  if (!std::isfinite(result.slope)) {
    throw ValidationError("underline_h_slope: no improving pair found");
  }
  return result;
}

namespace {

TradeoffPoint underline_linear_impl(const JointPmf& joint, double eps,
                                    bool strict) {
  UnderlineSlope s = underline_h_slope(joint);
  std::vector<std::size_t> argmax(joint.n);
  std::vector<double> q = joint.y_marginal();
  for (std::size_t y = 0; y < joint.n; ++y) {
    std::size_t best = 0;
    for (std::size_t x = 1; x < joint.m; ++x)
      if (joint.at(x, y) > joint.at(best, y)) best = x;
    argmax[y] = best;
  }
  double pc_xy = 0.0;
  for (std::size_t y = 0; y < joint.n; ++y) pc_xy += joint.at(argmax[y], y);
  if (eps > pc_xy + kDomainSlack) {
    throw ValidationError("underline_h_linear: eps above Pc(X|Y)");
  }
  double gap = joint.at(argmax[s.y0], s.y0) - joint.at(argmax[s.z0], s.y0);
  double zeta = snap_unit((pc_xy - eps) / gap);

  TradeoffPoint pt;
  pt.epsilon = eps;
  pt.utility = 1.0 - (pc_xy - eps) * s.slope;
  pt.regime = Regime::kNaryZ;
  pt.filter_param = zeta;
  if (zeta > 1.0) {
    if (strict) {
      throw RegimeError(
          "underline_h_linear: outside certified regime (crossover " +
          std::to_string(zeta) + " > 1)");
    }
    pt.achieved = false;
    return pt;
  }
  LeakagePair lp = evaluate_nary_z(joint, s.y0, s.z0, zeta);
  pt.achieved = std::abs(lp.privacy - eps) <= kCertTol &&
                std::abs(lp.utility - pt.utility) <= kCertTol;
  if (pt.achieved) pt.filter = make_nary_z(s.y0, s.z0, zeta, joint.n);
  if (strict && !pt.achieved) {
    throw RegimeError(
        "underline_h_linear: outside certified regime (certificate failed "
        "at eps = " + std::to_string(eps) + ")");
  }
  return pt;
}

}  // namespace

TradeoffPoint underline_h_linear(const JointPmf& joint, double eps) {
  return underline_linear_impl(joint, eps, /*strict=*/true);
}

TradeoffPoint underline_h_linear_formula(const JointPmf& joint, double eps) {
  return underline_linear_impl(joint, eps, /*strict=*/false);
}

}  // namespace privguess
