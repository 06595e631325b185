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

#ifndef PRIVGUESS_GAUSSIAN_HPP_
#define PRIVGUESS_GAUSSIAN_HPP_

#include <optional>
#include <vector>

#include "privguess/pmf.hpp"

namespace privguess {

// (X, Y) with var(Y) = var_y, Pearson correlation rho and maximal
// correlation rho_m; rho^2 <= rho_m^2 <= 1 always.
struct GaussianPairModel {
  double var_y;
  double rho;
  double rho_m;
  GaussianPairModel(double var_y_in, double rho_in, double rho_m_in);
  // jointly Gaussian pair: rho_m == |rho|
  static GaussianPairModel jointly_gaussian(double var_y_in, double rho_in);
};

struct DiscreteDistribution {
  std::vector<double> support;
  std::vector<double> masses;
  DiscreteDistribution(std::vector<double> support_in,
                       std::vector<double> masses_in);
  double mean() const;
  double variance() const;
};

// Nodes/weights for integrals against exp(-x^2) (physicists' convention).
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermite gauss_hermite(int n);

// mmse(Y | sqrt(gamma) Y + N(0,1)). Gaussian Y: var/(1+gamma*var) exactly;
// discrete Y (<= 64 atoms): posterior-variance integral by Gauss-Hermite.
double mmse_gaussian_channel(double var_y, double gamma);
double mmse_gaussian_channel(const DiscreteDistribution& y, double gamma,
                             int quad_nodes = 200);

// rho_m^2(X, Z_gamma) = rho^2 * gamma v / (1 + gamma v), strictly
// increasing in gamma with limit rho^2.
double rho_m_sq_gaussian(const GaussianPairModel& model, double gamma);

// Unique gamma with rho_m^2(X, Z_gamma) = eps, for eps in [0, rho^2).
double gamma_eps_gaussian(const GaussianPairModel& model, double eps);

struct SensrResult {
  double value = 1.0;
  double gamma_eps = 0.0;
  // eps == rho^2 is an infimum that no finite gamma attains.
  bool attained = true;
};
SensrResult sensr_gaussian(const GaussianPairModel& model, double eps);

// For a jointly Gaussian pair the weak (identity-function) privacy
// constraint coincides with the strong one, so both ratios agree.
SensrResult wensr_gaussian(const GaussianPairModel& model, double eps);

struct SensrBounds {
  std::optional<double> lower;  // needs eps <= rho^2
  std::optional<double> upper;  // needs eps <= rho_m^2
};
SensrBounds sensr_bounds_gaussian_y(const GaussianPairModel& model,
                                    double eps);

// Second singular value of P(u,v)/sqrt(p(u) q(v)); 0 for a degenerate
// marginal, 0 iff independent, 1 for a deterministic match.
double maximal_correlation_discrete(const JointPmf& joint);

// var(E[U|V]) / var(U) with the row index as the numeric value of U.
double eta_squared(const JointPmf& joint);

// Discrete analogue of strong estimation privacy: rho_m^2(X,Z) <= eps,
// boundary inclusive (up to fp slack).
bool strong_privacy_member(const JointPmf& joint_xz, double eps);

// (1 - sENSR(eps)) / eps per entry; each estimate must respect the
// 1/rho^2 small-eps limit. The scalar form returns the smallest-eps entry.
std::vector<double> small_eps_slopes(const GaussianPairModel& model,
                                     const std::vector<double>& eps_list);
double small_eps_slope(const GaussianPairModel& model,
                       const std::vector<double>& eps_list);

// Midpoint-quadrature binning of a correlated standard Gaussian pair; the
// designated approximation path for continuous maximal correlation.
// Convergence is reported by comparing bin counts, not by error bounds.
JointPmf binned_gaussian_joint(double rho, int bins = 400,
                               double range_sigmas = 8.0);

}  // namespace privguess

#endif  // PRIVGUESS_GAUSSIAN_HPP_
