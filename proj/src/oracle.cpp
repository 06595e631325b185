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

#include "privguess/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "privguess/channels.hpp"
#include "privguess/rng.hpp"
#include "privguess/simplex.hpp"

namespace privguess {

namespace {

constexpr std::size_t kOracleMaxSymbols = 6;
// Slack absorbing the float dust of grid coordinates and scores, so that
// eps == Pc(X) computed from the same joint stays feasible.
constexpr double kEpsSlack = 1e-9;

double pc_of(const std::vector<double>& v) {
  return *std::max_element(v.begin(), v.end());
}

}  // namespace

int default_resolution(std::size_t ny) {
  if (ny <= 2) return 256;
  if (ny <= 4) return 64;
  return 24;
}

PosteriorGrid build_posterior_grid(const JointPmf& joint, int resolution) {
  if (resolution < 16) {
    throw ValidationError("posterior grid: resolution must be >= 16");
  }
  std::vector<double> qy = joint.y_marginal();
  PosteriorGrid grid;
  grid.resolution = resolution;
  for (std::size_t y = 0; y < joint.n; ++y) {
    if (qy[y] > 0.0) grid.symbols.push_back(y);
  }
  grid.ny = grid.symbols.size();
  if (grid.ny > kOracleMaxSymbols) {
    throw ValidationError("posterior grid: at most 6 output symbols");
  }

  // P(x | y) for kept symbols
  std::vector<double> cond(joint.m * grid.ny);
  for (std::size_t x = 0; x < joint.m; ++x)
    for (std::size_t yi = 0; yi < grid.ny; ++yi)
      cond[x * grid.ny + yi] =
          joint.at(x, grid.symbols[yi]) / qy[grid.symbols[yi]];

  auto push_point = [&](const std::vector<double>& q) {
    double t = pc_of(q);
    double s = 0.0;
    for (std::size_t x = 0; x < joint.m; ++x) {
      double px = 0.0;
      for (std::size_t yi = 0; yi < grid.ny; ++yi)
        px += cond[x * grid.ny + yi] * q[yi];
      s = std::max(s, px);
    }
    grid.points.push_back(q);
    grid.s.push_back(s);
    grid.t.push_back(t);
  };

  // compositions of `resolution` into ny parts
  std::vector<int> parts(grid.ny, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int left) {
    if (idx + 1 == grid.ny) {
      parts[idx] = left;
      std::vector<double> q(grid.ny);
      for (std::size_t i = 0; i < grid.ny; ++i)
        q[i] = static_cast<double>(parts[i]) / resolution;
      push_point(q);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      parts[idx] = k;
      rec(idx + 1, left - k);
    }
  };
  rec(0, resolution);

  // exact marginal as an off-lattice point
  std::vector<double> qkeep(grid.ny);
  for (std::size_t yi = 0; yi < grid.ny; ++yi) qkeep[yi] = qy[grid.symbols[yi]];
  push_point(qkeep);

  // For binary Y the kinks of s (posterior ties between two x guesses) are
  // isolated points; optimal mixtures sit exactly on them, so adding them
  // makes the relaxation tight independent of the lattice alignment.
  if (grid.ny == 2) {
    for (std::size_t x1 = 0; x1 < joint.m; ++x1) {
      for (std::size_t x2 = x1 + 1; x2 < joint.m; ++x2) {
        double a1 = cond[x1 * 2 + 0], b1 = cond[x1 * 2 + 1];
        double a2 = cond[x2 * 2 + 0], b2 = cond[x2 * 2 + 1];
        double denom = (b1 - a1) - (b2 - a2);
        if (denom == 0.0) continue;
        double tt = (a2 - a1) / denom;
        if (tt > 0.0 && tt < 1.0) push_point({1.0 - tt, tt});
      }
    }
  }
  return grid;
}

LpSolution oracle_h_on_grid(const JointPmf& joint, const PosteriorGrid& grid,
                            double eps) {
  std::vector<double> qy = joint.y_marginal();
  std::size_t npts = grid.points.size();

  LpProblem lp;
  lp.num_vars = npts;
  lp.objective = grid.t;
  lp.le_rows.push_back(grid.s);
  lp.le_rhs.push_back(eps + kEpsSlack);
  // barycenter rows; the last kept coordinate is implied by the others
  // together with sum(w) = 1, so it is dropped to keep rows independent.
  for (std::size_t yi = 0; yi + 1 < grid.ny; ++yi) {
    std::vector<double> row(npts);
    for (std::size_t j = 0; j < npts; ++j) row[j] = grid.points[j][yi];
    lp.eq_rows.push_back(std::move(row));
    lp.eq_rhs.push_back(qy[grid.symbols[yi]]);
  }
  lp.eq_rows.push_back(std::vector<double>(npts, 1.0));
  lp.eq_rhs.push_back(1.0);

  LpResult res = solve_lp(lp);
  LpSolution out;
  if (res.status == LpStatus::kIterationLimit) {
    throw std::logic_error("oracle_h: simplex hit the iteration limit");
  }
  if (res.status == LpStatus::kInfeasible) {
    out.status = OracleStatus::kInfeasible;
    return out;
  }
  out.status = OracleStatus::kOptimal;
  out.value = res.objective;
  out.max_residual = res.max_residual;
  if (res.max_residual >= 1e-9) {
    throw std::logic_error("oracle_h: solved instance with residual " +
                           std::to_string(res.max_residual));
  }
  for (std::size_t j = 0; j < npts; ++j) {
    if (res.x[j] > 0.0) out.weights.push_back({j, res.x[j]});
  }
  return out;
}

LpSolution oracle_h(const JointPmf& joint, double eps, int resolution) {
  std::vector<double> qy = joint.y_marginal();
  std::size_t active = 0;
  for (double v : qy)
    if (v > 0.0) ++active;
  if (resolution <= 0) resolution = default_resolution(active);
  PosteriorGrid grid = build_posterior_grid(joint, resolution);
  return oracle_h_on_grid(joint, grid, eps);
}

Channel solution_filter(const JointPmf& joint, const PosteriorGrid& grid,
                        const LpSolution& solution) {
  if (solution.status != OracleStatus::kOptimal) {
    throw ValidationError("solution_filter: no optimal solution");
  }
  std::vector<double> qy = joint.y_marginal();
  std::vector<const LpWeight*> atoms;
  for (const LpWeight& w : solution.weights) {
    if (w.weight >= 1e-12) atoms.push_back(&w);
  }
  std::size_t k = atoms.size();
  std::vector<double> rows(joint.n * k, 0.0);
  for (std::size_t y = 0; y < joint.n; ++y) {
    auto it = std::find(grid.symbols.begin(), grid.symbols.end(), y);
    if (it == grid.symbols.end()) {
      rows[y * k] = 1.0;  // zero-mass symbol, row is never exercised
      continue;
    }
    std::size_t yi = static_cast<std::size_t>(it - grid.symbols.begin());
    double sum = 0.0;
    for (std::size_t z = 0; z < k; ++z) {
      double v =
          atoms[z]->weight * grid.points[atoms[z]->grid_index][yi] / qy[y];
      rows[y * k + z] = v;
      sum += v;
    }
    for (std::size_t z = 0; z < k; ++z) rows[y * k + z] /= sum;
  }
  return Channel(joint.n, k, std::move(rows));
}

TradeoffCurve oracle_curve(const JointPmf& joint, int num_points,
                           int resolution, int threads) {
  if (num_points < 1) throw ValidationError("oracle_curve: num_points >= 1");
  double pc_x = pc_of(joint.x_marginal());
  double pc_xy = pc_conditional(joint);

  TradeoffCurve curve;
  curve.eps_min = pc_x;
  curve.eps_max = pc_xy;
  if (pc_xy - pc_x < 1e-12) {
    TradeoffPoint pt;
    pt.epsilon = pc_x;
    pt.utility = 1.0;
    pt.regime = Regime::kOracleOnly;
    curve.points.push_back(pt);
    return curve;
  }

  std::vector<double> qy = joint.y_marginal();
  std::size_t active = 0;
  for (double v : qy)
    if (v > 0.0) ++active;
  if (resolution <= 0) resolution = default_resolution(active);
  PosteriorGrid grid = build_posterior_grid(joint, resolution);

  std::vector<double> eps(num_points);
  for (int i = 0; i < num_points; ++i) {
    eps[i] = num_points == 1
                 ? pc_x
                 : pc_x + (pc_xy - pc_x) * i / (num_points - 1);
  }
  curve.points.assign(num_points, TradeoffPoint{});

  auto solve_point = [&](int i) {
    LpSolution sol = oracle_h_on_grid(joint, grid, eps[i]);
    if (sol.status != OracleStatus::kOptimal) {
      throw std::logic_error("oracle_curve: point " + std::to_string(i) +
                             " infeasible inside the domain");
    }
    TradeoffPoint pt;
    pt.epsilon = eps[i];
    pt.utility = sol.value;
    pt.regime = Regime::kOracleOnly;
    curve.points[i] = pt;
  };

  threads = std::max(1, std::min<int>(threads, num_points));
  if (threads == 1) {
    for (int i = 0; i < num_points; ++i) solve_point(i);
  } else {
    std::atomic<int> next{0};
    std::mutex error_mu;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        try {
          for (int i = next++; i < num_points; i = next++) solve_point(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }
  return curve;
}

namespace {

struct SearchState {
  const JointPmf& joint;
  double eps;
  double best_utility = -1.0;
  std::vector<double> best_rows;
  std::size_t k = 0;

  explicit SearchState(const JointPmf& j, double e, std::size_t k_in)
      : joint(j), eps(e), k(k_in) {}

  bool consider(const std::vector<double>& rows) {
    Channel ch(joint.n, k, rows);
    LeakagePair lp = evaluate_filter(joint, ch);
    if (lp.privacy <= eps + 1e-12 && lp.utility > best_utility) {
      best_utility = lp.utility;
      best_rows = rows;
      return true;
    }
    return false;
  }
};

// Local moves: shift a fraction of row mass between two columns, keep the
// move only when it stays feasible and strictly improves utility.
void coordinate_ascent(SearchState& state, std::vector<double> rows,
                       int passes) {
  if (rows.empty()) return;
  std::size_t n = state.joint.n, k = state.k;
  state.consider(rows);
  const double steps[] = {0.5, 0.25, 0.1, 0.04, 0.015, 0.005, 0.001};
  for (int pass = 0; pass < passes; ++pass) {
    bool improved = false;
    for (double step : steps) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z1 = 0; z1 < k; ++z1) {
          if (rows[y * k + z1] <= 0.0) continue;
          for (std::size_t z2 = 0; z2 < k; ++z2) {
            if (z1 == z2) continue;
            double d = step * rows[y * k + z1];
            std::vector<double> trial = rows;
            trial[y * k + z1] -= d;
            trial[y * k + z2] += d;
            Channel ch(n, k, trial);
            LeakagePair lp = evaluate_filter(state.joint, ch);
            if (lp.privacy <= state.eps + 1e-12 &&
                lp.utility > state.best_utility + 1e-14) {
              state.best_utility = lp.utility;
              state.best_rows = trial;
              rows = std::move(trial);
              improved = true;
            }
          }
        }
      }
    }
    if (!improved) break;
  }
}

std::vector<double> random_rows(SplitMix64& rng, std::size_t n,
                                std::size_t k) {
  std::vector<double> rows(n * k);
  for (std::size_t y = 0; y < n; ++y) {
    double sum = 0.0;
    for (std::size_t z = 0; z < k; ++z) {
      double e = rng.next_exponential();
      rows[y * k + z] = e;
      sum += e;
    }
    for (std::size_t z = 0; z < k; ++z) rows[y * k + z] /= sum;
  }
  return rows;
}

TradeoffPoint finish_search(SearchState& state) {
  if (state.best_utility < 0.0) {
    throw std::logic_error(
        "filter search: no feasible candidate (eps below Pc(X)?)");
  }
  TradeoffPoint pt;
  pt.epsilon = state.eps;
  pt.utility = state.best_utility;
  pt.regime = Regime::kOracleOnly;
  pt.filter = Channel(state.joint.n, state.k, state.best_rows);
  // the filter is its own witness: privacy <= eps and utility as recorded
  LeakagePair lp = evaluate_filter(state.joint, *pt.filter);
  pt.achieved = lp.privacy <= state.eps + 1e-9 &&
                std::abs(lp.utility - pt.utility) <= 1e-9;
  return pt;
}

}  // namespace

TradeoffPoint random_filter_search(const JointPmf& joint, double eps,
                                   int budget, std::uint64_t seed) {
  if (budget < 1) throw ValidationError("random_filter_search: budget >= 1");
  std::size_t n = joint.n, k = joint.n + 1;
  SearchState state(joint, eps, k);

  // identity into the first n columns, and the constant filter
  std::vector<double> ident(n * k, 0.0);
  for (std::size_t y = 0; y < n; ++y) ident[y * k + y] = 1.0;
  std::vector<double> constant(n * k, 0.0);
  for (std::size_t y = 0; y < n; ++y) constant[y * k] = 1.0;
  state.consider(ident);
  state.consider(constant);

  std::vector<std::pair<double, std::vector<double>>> top;
  for (int i = 0; i < budget; ++i) {
    SplitMix64 rng = SplitMix64::for_task(seed, static_cast<std::uint64_t>(i));
    std::vector<double> rows = random_rows(rng, n, k);
    Channel ch(n, k, rows);
    LeakagePair lp = evaluate_filter(joint, ch);
    if (lp.privacy <= eps + 1e-12) {
      if (lp.utility > state.best_utility) {
        state.best_utility = lp.utility;
        state.best_rows = rows;
      }
      top.emplace_back(lp.utility, std::move(rows));
    }
  }
  std::sort(top.begin(), top.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  if (top.size() > 8) top.resize(8);
  for (auto& cand : top) coordinate_ascent(state, cand.second, 60);
  coordinate_ascent(state, ident, 60);
  coordinate_ascent(state, constant, 60);
  return finish_search(state);
}

TradeoffPoint oracle_underline_h(const JointPmf& joint, double eps, int budget,
                                 std::uint64_t seed) {
  if (budget < 1) throw ValidationError("oracle_underline_h: budget >= 1");
  std::size_t n = joint.n, k = joint.n;
  SearchState state(joint, eps, k);

  std::vector<double> ident(n * k, 0.0);
  for (std::size_t y = 0; y < n; ++y) ident[y * k + y] = 1.0;
  std::vector<double> constant(n * k, 0.0);
  for (std::size_t y = 0; y < n; ++y) constant[y * k] = 1.0;
  state.consider(ident);
  state.consider(constant);

  // The N-ary Z family, swept on a coarse crossover grid and then bisected
  // onto the privacy boundary. Privacy is non-increasing in gamma, so the
  // smallest feasible gamma carries the highest utility.
  auto nary_rows = [&](std::size_t y0, std::size_t z0, double g) {
    std::vector<double> rows = ident;
    rows[y0 * k + y0] = 1.0 - g;
    rows[y0 * k + z0] = g;
    return rows;
  };
  for (std::size_t y0 = 0; y0 < n; ++y0) {
    for (std::size_t z0 = 0; z0 < n; ++z0) {
      if (y0 == z0) continue;
      for (int g = 0; g <= 64; ++g) {
        state.consider(nary_rows(y0, z0, g / 64.0));
      }
      auto privacy = [&](double g) {
        return evaluate_nary_z(joint, y0, z0, g).privacy;
      };
      if (privacy(1.0) <= eps + 1e-12) {
        double lo = 0.0, hi = 1.0;  // privacy(hi) feasible
        if (privacy(0.0) <= eps + 1e-12) {
          hi = 0.0;
        } else {
          for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (privacy(mid) <= eps + 1e-12 ? hi : lo) = mid;
          }
        }
        state.consider(nary_rows(y0, z0, hi));
      }
    }
  }

  for (int i = 0; i < budget; ++i) {
    SplitMix64 rng = SplitMix64::for_task(seed, static_cast<std::uint64_t>(i));
    std::vector<double> rows = random_rows(rng, n, k);
    Channel ch(n, k, rows);
    LeakagePair lp = evaluate_filter(joint, ch);
    if (lp.privacy <= eps + 1e-12 && lp.utility > state.best_utility) {
      state.best_utility = lp.utility;
      state.best_rows = rows;
    }
  }
  coordinate_ascent(state, state.best_rows, 40);
  return finish_search(state);
}

}  // namespace privguess
