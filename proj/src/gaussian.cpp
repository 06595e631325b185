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

#include "privguess/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace privguess {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Largest eigenvalue of a dense symmetric matrix by cyclic Jacobi sweeps.
double jacobi_max_eigenvalue(std::vector<double> a, std::size_t n) {
  if (n == 1) return a[0];
  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return s;
  };
  double scale = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) scale = std::max(scale, std::abs(a[i]));
  if (scale == 0.0) return 0.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_norm() < 1e-28 * scale * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        double app = a[p * n + p], aqq = a[q * n + q];
        double theta = 0.5 * (aqq - app) / apq;
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  double best = a[0];
  for (std::size_t i = 1; i < n; ++i) best = std::max(best, a[i * n + i]);
  return best;
}

}  // namespace

GaussianPairModel::GaussianPairModel(double var_y_in, double rho_in,
                                     double rho_m_in)
    : var_y(var_y_in), rho(rho_in), rho_m(rho_m_in) {
  if (!(var_y > 0.0)) throw ValidationError("GaussianPairModel: var_y > 0");
  if (!(rho >= -1.0 && rho <= 1.0))
    throw ValidationError("GaussianPairModel: rho in [-1, 1]");
  if (!(rho_m >= std::abs(rho) - 1e-12 && rho_m <= 1.0 + 1e-12))
    throw ValidationError("GaussianPairModel: needs |rho| <= rho_m <= 1");
}

GaussianPairModel GaussianPairModel::jointly_gaussian(double var_y_in,
                                                      double rho_in) {
  return GaussianPairModel(var_y_in, rho_in, std::abs(rho_in));
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> support_in,
                                           std::vector<double> masses_in)
    : support(std::move(support_in)), masses(std::move(masses_in)) {
  if (support.size() != masses.size() || support.empty()) {
    throw ValidationError("DiscreteDistribution: support/mass mismatch");
  }
  if (support.size() > 64) {
    throw ValidationError("DiscreteDistribution: at most 64 atoms");
  }
  double sum = 0.0;
  for (double m : masses) {
    if (m < 0.0) throw ValidationError("DiscreteDistribution: negative mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > kPmfSumTol) {
    throw ValidationError("DiscreteDistribution: masses must sum to 1");
  }
  for (std::size_t i = 0; i < support.size(); ++i)
    for (std::size_t j = i + 1; j < support.size(); ++j)
      if (support[i] == support[j]) {
        throw ValidationError("DiscreteDistribution: duplicate support point");
      }
}

double DiscreteDistribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) m += masses[i] * support[i];
  return m;
}

double DiscreteDistribution::variance() const {
  double mu = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i)
    v += masses[i] * (support[i] - mu) * (support[i] - mu);
  return v;
}

namespace {

// Orthonormal Hermite recurrence (weight exp(-x^2)) with running
// rescaling: between the outer roots the magnitudes reach past 1e300 for a
// few hundred nodes, so the pair is renormalized and the ratio kept exact.
// `scale` counts how many factors of 1e250 were divided out.
struct HermiteValue {
  double value = 0.0;
  double deriv = 0.0;
  int scale = 0;
};

HermiteValue hermite_eval(int n, double x) {
  double p1 = 0.7511255444649425;  // pi^{-1/4}
  double p2 = 0.0;
  int scale = 0;
  for (int j = 1; j <= n; ++j) {
    double p3 = p2;
    p2 = p1;
    p1 = x * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
    if (std::abs(p1) > 1e250) {
      p1 *= 1e-250;
      p2 *= 1e-250;
      ++scale;
    }
  }
  return {p1, std::sqrt(2.0 * n) * p2, scale};
}

}  // namespace

GaussHermite gauss_hermite(int n) {
  if (n < 1) throw ValidationError("gauss_hermite: n >= 1");
  GaussHermite out;
  out.nodes.assign(n, 0.0);
  out.weights.assign(n, 0.0);

  // Scan the positive axis with a step below the minimal root spacing
  // (pi / sqrt(2n) at the center), bisect each sign change, then polish
  // with a few Newton steps. Roots mirror to the negative side.
  double upper = std::sqrt(2.0 * n + 1.0) + 0.5;
  double step = 0.25 * M_PI / std::sqrt(2.0 * n);
  int half = n / 2;
  std::vector<double> roots;
  roots.reserve(half);
  // odd n has a root exactly at the origin; start the scan past it
  double x_prev = n % 2 == 1 ? step * 0.5 : 1e-12;
  HermiteValue prev = hermite_eval(n, x_prev);
  for (double x = x_prev + step; x < upper + step;
       x += step) {
    HermiteValue cur = hermite_eval(n, x);
    if ((prev.value < 0.0) != (cur.value < 0.0)) {
      double lo = x_prev, hi = x;
      double flo = prev.value;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double fmid = hermite_eval(n, mid).value;
        if ((fmid < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
        if (hi - lo < 1e-15 * std::max(1.0, lo)) break;
      }
      double root = 0.5 * (lo + hi);
      for (int it = 0; it < 4; ++it) {
        HermiteValue hv = hermite_eval(n, root);
        double delta = hv.value / hv.deriv;
        if (!std::isfinite(delta)) break;
        if (std::abs(delta) > step) break;  // keep Newton inside the bracket
        root -= delta;
      }
      roots.push_back(root);
    }
    x_prev = x;
    prev = cur;
  }
  if (static_cast<int>(roots.size()) != half) {
    throw std::logic_error("gauss_hermite: root scan miscounted");
  }

  auto weight_at = [&](double root) {
    HermiteValue hv = hermite_eval(n, root);
    // a positive scale count means the true weight underflows double range
    if (hv.scale > 0) return 0.0;
    return 2.0 / (hv.deriv * hv.deriv);
  };
  for (int i = 0; i < half; ++i) {
    double root = roots[half - 1 - i];  // descending magnitude outward
    double w = weight_at(root);
    out.nodes[i] = -root;
    out.nodes[n - 1 - i] = root;
    out.weights[i] = w;
    out.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    out.nodes[half] = 0.0;
    out.weights[half] = weight_at(0.0);
  }
  return out;
}

double mmse_gaussian_channel(double var_y, double gamma) {
  if (!(var_y > 0.0)) throw ValidationError("mmse: var_y must be positive");
  if (gamma < 0.0) throw ValidationError("mmse: gamma must be >= 0");
  return var_y / (1.0 + gamma * var_y);
}

double mmse_gaussian_channel(const DiscreteDistribution& y, double gamma,
                             int quad_nodes) {
  if (gamma < 0.0) throw ValidationError("mmse: gamma must be >= 0");
  if (gamma == 0.0) return y.variance();
  GaussHermite gh = gauss_hermite(quad_nodes);
  double sg = std::sqrt(gamma);
  std::size_t na = y.support.size();
  double total = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    double acc = 0.0;
    for (int k = 0; k < quad_nodes; ++k) {
      double zval = sg * y.support[i] + std::sqrt(2.0) * gh.nodes[k];
      double s0 = 0.0, s1 = 0.0, s2 = 0.0;
      for (std::size_t j = 0; j < na; ++j) {
        double d = zval - sg * y.support[j];
        double w = y.masses[j] * std::exp(-0.5 * d * d);
        s0 += w;
        s1 += w * y.support[j];
        s2 += w * y.support[j] * y.support[j];
      }
      double var_post = 0.0;
      if (s0 > 1e-300) {
        double mean_post = s1 / s0;
        var_post = std::max(0.0, s2 / s0 - mean_post * mean_post);
      }
      acc += gh.weights[k] * var_post;
    }
    total += y.masses[i] * acc / kSqrtPi;
  }
  return total;
}

double rho_m_sq_gaussian(const GaussianPairModel& model, double gamma) {
  if (gamma < 0.0) throw ValidationError("rho_m_sq: gamma must be >= 0");
  double gv = gamma * model.var_y;
  return model.rho * model.rho * gv / (1.0 + gv);
}

double gamma_eps_gaussian(const GaussianPairModel& model, double eps) {
  double r2 = model.rho * model.rho;
  if (!(eps >= 0.0 && eps < r2)) {
    throw ValidationError("gamma_eps: eps must lie in [0, rho^2)");
  }
  return eps / (model.var_y * (r2 - eps));
}

SensrResult sensr_gaussian(const GaussianPairModel& model, double eps) {
  double r2 = model.rho * model.rho;
  if (!(eps >= 0.0 && eps <= r2 + 1e-15)) {
    throw ValidationError(
        "sensr_gaussian: eps outside [0, rho^2]; the privacy constraint "
        "cannot reach further");
  }
  SensrResult out;
  out.value = 1.0 - eps / r2;
  if (eps >= r2 - 1e-15) {
    out.attained = false;  // supremum over gamma, not attained
    out.gamma_eps = std::numeric_limits<double>::infinity();
  } else {
    out.attained = true;
    out.gamma_eps = gamma_eps_gaussian(model, eps);
  }
  return out;
}

SensrResult wensr_gaussian(const GaussianPairModel& model, double eps) {
  return sensr_gaussian(model, eps);
}

SensrBounds sensr_bounds_gaussian_y(const GaussianPairModel& model,
                                    double eps) {
  if (eps < 0.0) throw ValidationError("sensr_bounds: eps must be >= 0");
  SensrBounds out;
  double r2 = model.rho * model.rho;
  double rm2 = model.rho_m * model.rho_m;
  if (eps <= r2 + 1e-15 && r2 > 0.0) out.lower = 1.0 - eps / r2;
  if (eps <= rm2 + 1e-15 && rm2 > 0.0) out.upper = 1.0 - eps / rm2;
  return out;
}

double maximal_correlation_discrete(const JointPmf& joint) {
  std::vector<double> px = joint.x_marginal();
  std::vector<double> qy = joint.y_marginal();
  std::vector<std::size_t> xs, ys;
  for (std::size_t x = 0; x < joint.m; ++x)
    if (px[x] > 0.0) xs.push_back(x);
  for (std::size_t y = 0; y < joint.n; ++y)
    if (qy[y] > 0.0) ys.push_back(y);
  if (xs.size() <= 1 || ys.size() <= 1) return 0.0;  // degenerate marginal

  std::size_t m = xs.size(), n = ys.size();
  // D = B - sqrt(p) sqrt(q)^T with B(u,v) = P(u,v)/sqrt(p(u) q(v)); the
  // rank-one deflation removes the trivial unit singular value.
  std::vector<double> dm(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    double sp = std::sqrt(px[xs[i]]);
    for (std::size_t j = 0; j < n; ++j) {
      double sq = std::sqrt(qy[ys[j]]);
      dm[i * n + j] = joint.at(xs[i], ys[j]) / (sp * sq) - sp * sq;
    }
  }
  std::size_t g = std::min(m, n);
  std::vector<double> gram(g * g, 0.0);
  if (m <= n) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += dm[i * n + k] * dm[j * n + k];
        gram[i * m + j] = gram[j * m + i] = s;
      }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += dm[k * n + i] * dm[k * n + j];
        gram[i * n + j] = gram[j * n + i] = s;
      }
  }
  double lam = jacobi_max_eigenvalue(std::move(gram), g);
  return std::min(1.0, std::sqrt(std::max(0.0, lam)));
}

double eta_squared(const JointPmf& joint) {
  std::vector<double> px = joint.x_marginal();
  std::vector<double> qy = joint.y_marginal();
  double mean = 0.0;
  for (std::size_t x = 0; x < joint.m; ++x) mean += px[x] * x;
  double var = 0.0;
  for (std::size_t x = 0; x < joint.m; ++x)
    var += px[x] * (x - mean) * (x - mean);
  if (!(var > 0.0)) throw ValidationError("eta_squared: constant U");

  double var_cond_mean = 0.0;
  for (std::size_t y = 0; y < joint.n; ++y) {
    if (qy[y] <= 0.0) continue;
    double cm = 0.0;
    for (std::size_t x = 0; x < joint.m; ++x) cm += joint.at(x, y) * x;
    cm /= qy[y];
    var_cond_mean += qy[y] * (cm - mean) * (cm - mean);
  }
  return var_cond_mean / var;
}

bool strong_privacy_member(const JointPmf& joint_xz, double eps) {
  if (eps < 0.0) throw ValidationError("strong_privacy_member: eps >= 0");
  double rm = maximal_correlation_discrete(joint_xz);
  return rm * rm <= eps + 1e-12;  // boundary inclusive up to fp slack
}

std::vector<double> small_eps_slopes(const GaussianPairModel& model,
                                     const std::vector<double>& eps_list) {
  if (eps_list.empty()) {
    throw ValidationError("small_eps_slopes: empty eps list");
  }
  double r2 = model.rho * model.rho;
  std::vector<double> out;
  out.reserve(eps_list.size());
  double prev = std::numeric_limits<double>::infinity();
  for (double e : eps_list) {
    if (!(e > 0.0 && e <= r2)) {
      throw ValidationError("small_eps_slopes: eps values must lie in (0, rho^2]");
    }
    if (e > prev) {
      throw ValidationError("small_eps_slopes: eps list must be non-increasing");
    }
    prev = e;
    double slope = (1.0 - sensr_gaussian(model, e).value) / e;
    if (slope > 1.0 / r2 + 0.05) {
      throw std::logic_error("small_eps_slopes: slope exceeds the 1/rho^2 limit");
    }
    out.push_back(slope);
  }
  return out;
}

double small_eps_slope(const GaussianPairModel& model,
                       const std::vector<double>& eps_list) {
  return small_eps_slopes(model, eps_list).back();
}

JointPmf binned_gaussian_joint(double rho, int bins, double range_sigmas) {
  if (!(rho > -1.0 && rho < 1.0)) {
    throw ValidationError("binned_gaussian_joint: |rho| must be < 1");
  }
  if (bins < 2 || bins > 2048) {
    throw ValidationError("binned_gaussian_joint: bins in [2, 2048]");
  }
  double lo = -range_sigmas, hi = range_sigmas;
  double step = (hi - lo) / bins;
  double sd = std::sqrt(1.0 - rho * rho);
  auto ncdf = [](double v) { return 0.5 * std::erfc(-v / std::sqrt(2.0)); };

  // y-conditional slices: P(cell) = int_x phi(x) [Phi(b') - Phi(a')] dx with
  // a 4-point midpoint rule per x-bin.
  std::vector<double> table(static_cast<std::size_t>(bins) * bins, 0.0);
  constexpr int kSub = 4;
  for (int i = 0; i < bins; ++i) {
    double x0 = lo + i * step;
    for (int s = 0; s < kSub; ++s) {
      double x = x0 + (s + 0.5) * step / kSub;
      double wx = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI) * step / kSub;
      double mu = rho * x;
      double prev = ncdf((lo - mu) / sd);
      for (int j = 0; j < bins; ++j) {
        double next = ncdf((lo + (j + 1) * step - mu) / sd);
        table[static_cast<std::size_t>(i) * bins + j] += wx * (next - prev);
        prev = next;
      }
    }
  }
  double sum = 0.0;
  for (double v : table) sum += v;
  for (double& v : table) v /= sum;
  return JointPmf(bins, bins, std::move(table));
}

}  // namespace privguess
