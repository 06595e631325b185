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

#include "privguess/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "privguess/errors.hpp"

namespace privguess {

namespace {

class Tableau {
 public:
  Tableau(const LpProblem& p, double tol) : tol_(tol) {
    num_structural_ = p.num_vars;
    num_slack_ = p.le_rows.size();
    m_ = p.eq_rows.size() + p.le_rows.size();
    // layout: structural | slacks | artificials, rhs last
    num_art_ = 0;
    std::vector<int> art_row;
    rows_.assign(m_, {});
    basis_.assign(m_, 0);

    std::size_t r = 0;
    for (std::size_t i = 0; i < p.le_rows.size(); ++i, ++r) {
      if (p.le_rows[i].size() != p.num_vars)
        throw ValidationError("solve_lp: row width mismatch");
      double sign = p.le_rhs[i] < 0.0 ? -1.0 : 1.0;
      // With sign flipped a <= row becomes >=, whose slack enters with -1
      // and cannot start the basis; it then needs an artificial.
      build_row(r, p.le_rows[i], p.le_rhs[i], sign);
      slack_sign_.push_back(sign);
      if (sign > 0.0) {
        basis_[r] = slack_col(i);
      } else {
        art_row.push_back(static_cast<int>(r));
      }
    }
    for (std::size_t i = 0; i < p.eq_rows.size(); ++i, ++r) {
      if (p.eq_rows[i].size() != p.num_vars)
        throw ValidationError("solve_lp: row width mismatch");
      double sign = p.eq_rhs[i] < 0.0 ? -1.0 : 1.0;
      build_row(r, p.eq_rows[i], p.eq_rhs[i], sign);
      art_row.push_back(static_cast<int>(r));
    }
    num_art_ = art_row.size();
    ncols_ = num_structural_ + num_slack_ + num_art_;
    for (auto& row : rows_) row.resize(ncols_ + 1, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      rows_[i][ncols_] = rhs_[i];
    }
    for (std::size_t i = 0; i < p.le_rows.size(); ++i) {
      rows_[i][slack_col(i)] = slack_sign_[i];
    }
    for (std::size_t a = 0; a < num_art_; ++a) {
      std::size_t row = art_row[a];
      std::size_t col = num_structural_ + num_slack_ + a;
      rows_[row][col] = 1.0;
      basis_[row] = col;
    }
    obj_.assign(ncols_ + 1, 0.0);
  }

  std::size_t slack_col(std::size_t le_index) const {
    return num_structural_ + le_index;
  }
  bool is_artificial(std::size_t col) const {
    return col >= num_structural_ + num_slack_;
  }

  // objective row for max sum(c_j x_j); basic columns eliminated
  void load_objective(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= ncols_; ++j) obj_[j] = 0.0;
    for (std::size_t j = 0; j < c.size() && j < ncols_; ++j) obj_[j] = -c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      double cb = basis_[i] < c.size() ? c[basis_[i]] : 0.0;
      if (cb != 0.0) {
        for (std::size_t j = 0; j <= ncols_; ++j)
          obj_[j] += cb * rows_[i][j];
      }
    }
  }

  // Entering column by Dantzig pricing while the objective moves; after a
  // degenerate stall the rule switches to Bland's lowest-index choice,
  // which guarantees termination. Returns false when optimal.
  bool iterate(bool allow_artificial_entering, bool bland) {
    std::size_t enter = ncols_;
    if (bland) {
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (!allow_artificial_entering && is_artificial(j)) continue;
        if (obj_[j] < -tol_) {
          enter = j;
          break;
        }
      }
    } else {
      double best = -tol_;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (!allow_artificial_entering && is_artificial(j)) continue;
        if (obj_[j] < best) {
          best = obj_[j];
          enter = j;
        }
      }
    }
    if (enter == ncols_) return false;

    std::size_t leave_row = m_;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_; ++i) {
      double a = rows_[i][enter];
      if (a > tol_) {
        double ratio = rows_[i][ncols_] / a;
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             (leave_row == m_ || basis_[i] < basis_[leave_row]))) {
          best_ratio = ratio;
          leave_row = i;
        }
      }
    }
    if (leave_row == m_) {
      throw std::logic_error("solve_lp: unbounded direction encountered");
    }
    pivot(leave_row, enter);
    return true;
  }

  void pivot(std::size_t r, std::size_t c) {
    double piv = rows_[r][c];
    for (std::size_t j = 0; j <= ncols_; ++j) rows_[r][j] /= piv;
    rows_[r][c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double f = rows_[i][c];
      if (f != 0.0) {
        for (std::size_t j = 0; j <= ncols_; ++j)
          rows_[i][j] -= f * rows_[r][j];
        rows_[i][c] = 0.0;
      }
    }
    double f = obj_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= ncols_; ++j) obj_[j] -= f * rows_[r][j];
      obj_[c] = 0.0;
    }
    basis_[r] = c;
  }

  double objective_value() const { return obj_[ncols_]; }

  // After phase 1, pivot leftover artificials out where a structural or
  // slack pivot exists; rows that stay artificial are redundant and inert.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (std::size_t j = 0; j < num_structural_ + num_slack_; ++j) {
        if (std::abs(rows_[i][j]) > tol_) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<double> extract(std::size_t nvars) const {
    std::vector<double> x(nvars, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < nvars) x[basis_[i]] = rows_[i][ncols_];
    }
    return x;
  }

  std::size_t num_structural_offset_art() const {
    return num_structural_ + num_slack_;
  }
  std::size_t ncols() const { return ncols_; }

 private:
  void build_row(std::size_t r, const std::vector<double>& coeffs, double rhs,
                 double sign) {
    rows_[r].assign(coeffs.size(), 0.0);
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      rows_[r][j] = sign * coeffs[j];
    if (rhs_.size() <= r) rhs_.resize(r + 1, 0.0);
    rhs_[r] = sign * rhs;
  }

 public:
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_;
  std::vector<double> slack_sign_;
  std::size_t m_ = 0, ncols_ = 0;
  std::size_t num_structural_ = 0, num_slack_ = 0, num_art_ = 0;
  double tol_;
};

}  // namespace

LpResult solve_lp(const LpProblem& p, double tol, long max_iters) {
  if (p.objective.size() != p.num_vars)
    throw ValidationError("solve_lp: objective size mismatch");
  if (p.eq_rows.size() != p.eq_rhs.size() ||
      p.le_rows.size() != p.le_rhs.size())
    throw ValidationError("solve_lp: rhs size mismatch");

  Tableau t(p, tol);

  LpResult result;
  // A run of pivots with no objective movement signals degeneracy; from
  // then on Bland's rule finishes the phase without cycling.
  auto optimize = [&](bool allow_art) -> bool {
    long iters = 0;
    int stalled = 0;
    bool bland = false;
    double last = t.objective_value();
    while (t.iterate(allow_art, bland)) {
      if (++iters > max_iters) return false;
      if (!bland) {
        double now = t.objective_value();
        stalled = now > last + 1e-15 ? 0 : stalled + 1;
        last = now;
        if (stalled >= 40) bland = true;
      }
    }
    return true;
  };

  // Phase 1: drive artificials to zero.
  if (t.num_art_ > 0) {
    std::vector<double> c1(t.ncols(), 0.0);
    for (std::size_t a = 0; a < t.num_art_; ++a)
      c1[t.num_structural_offset_art() + a] = -1.0;
    t.load_objective(c1);
    if (!optimize(true)) {
      result.status = LpStatus::kIterationLimit;
      return result;
    }
    if (t.objective_value() < -1e-7) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    t.expel_artificials();
  }

  // Phase 2.
  std::vector<double> c2(t.ncols(), 0.0);
  for (std::size_t j = 0; j < p.num_vars; ++j) c2[j] = p.objective[j];
  t.load_objective(c2);
  if (!optimize(false)) {
    result.status = LpStatus::kIterationLimit;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.x = t.extract(p.num_vars);
  double obj = 0.0;
  for (std::size_t j = 0; j < p.num_vars; ++j)
    obj += p.objective[j] * result.x[j];
  result.objective = obj;

  double resid = 0.0;
  for (std::size_t i = 0; i < p.eq_rows.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < p.num_vars; ++j)
      s += p.eq_rows[i][j] * result.x[j];
    resid = std::max(resid, std::abs(s - p.eq_rhs[i]));
  }
  for (std::size_t i = 0; i < p.le_rows.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < p.num_vars; ++j)
      s += p.le_rows[i][j] * result.x[j];
    resid = std::max(resid, std::max(0.0, s - p.le_rhs[i]));
  }
  result.max_residual = resid;
  return result;
}

}  // namespace privguess
