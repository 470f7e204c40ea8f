// Copyright 2026 The arqddf Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense two-phase simplex for the tiny linear programs produced by outage
// region branch enumeration (a handful of variables, a dozen rows). All
// variables are nonnegative. Bland's rule keeps it cycle-free.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace arqddf::lp {

enum class Relation { LessEq, GreaterEq, Equal };

struct Row {
  std::vector<double> a;
  Relation rel = Relation::LessEq;
  double b = 0.0;
};

struct Problem {
  int num_vars = 0;
  std::vector<double> objective;  // minimized; size num_vars
  std::vector<Row> rows;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> x;
};

namespace detail {
constexpr double kEps = 1e-9;

class Tableau {
 public:
  // Columns: [structural | slack/surplus | artificial | rhs].
  Tableau(const Problem& p) : n_(p.num_vars), m_(static_cast<int>(p.rows.size())) {
    int n_slack = 0;
    for (const auto& r : p.rows)
      if (r.rel != Relation::Equal) ++n_slack;
    slack0_ = n_;
    art0_ = n_ + n_slack;
    cols_ = art0_ + m_;  // at most one artificial per row
    t_.assign(m_ + 1, std::vector<double>(cols_ + 1, 0.0));
    basis_.assign(m_, -1);

    int slack = slack0_, art = art0_;
    n_art_ = 0;
    for (int i = 0; i < m_; ++i) {
      const Row& r = p.rows[i];
      double sign = 1.0;
      Relation rel = r.rel;
      if (r.b < 0) {  // normalize to b >= 0
        sign = -1.0;
        if (rel == Relation::LessEq)
          rel = Relation::GreaterEq;
        else if (rel == Relation::GreaterEq)
          rel = Relation::LessEq;
      }
      for (int j = 0; j < n_ && j < static_cast<int>(r.a.size()); ++j)
        t_[i][j] = sign * r.a[j];
      t_[i][cols_] = sign * r.b;
      if (rel == Relation::LessEq) {
        t_[i][slack] = 1.0;
        basis_[i] = slack++;
      } else if (rel == Relation::GreaterEq) {
        t_[i][slack++] = -1.0;
        t_[i][art] = 1.0;
        basis_[i] = art++;
        ++n_art_;
      } else {
        t_[i][art] = 1.0;
        basis_[i] = art++;
        ++n_art_;
      }
    }
  }

  Solution solve(const std::vector<double>& objective) {
    // Phase 1: minimize the sum of artificials.
    if (n_art_ > 0) {
      std::vector<double> phase1(cols_, 0.0);
      for (int j = art0_; j < cols_; ++j) phase1[j] = 1.0;
      set_costs(phase1);
      if (!iterate(/*forbid_artificials=*/false)) return {Status::Unbounded, 0.0, {}};
      if (t_[m_][cols_] < -kEps) return {Status::Infeasible, 0.0, {}};
      pivot_artificials_out();
    }
    // Phase 2: original objective, artificials barred from re-entering.
    std::vector<double> costs(cols_, 0.0);
    for (int j = 0; j < n_ && j < static_cast<int>(objective.size()); ++j)
      costs[j] = objective[j];
    set_costs(costs);
    if (!iterate(/*forbid_artificials=*/true))
      return {Status::Unbounded, -std::numeric_limits<double>::infinity(), {}};

    Solution s;
    s.status = Status::Optimal;
    s.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) s.x[basis_[i]] = t_[i][cols_];
    s.value = 0.0;
    for (int j = 0; j < n_; ++j) s.value += s.x[j] * costs[j];
    return s;
  }

 private:
  void set_costs(const std::vector<double>& costs) {
    for (int j = 0; j <= cols_; ++j) t_[m_][j] = j < cols_ ? costs[j] : 0.0;
    // Price out the basis.
    for (int i = 0; i < m_; ++i) {
      const double c = t_[m_][basis_[i]];
      if (c != 0.0)
        for (int j = 0; j <= cols_; ++j) t_[m_][j] -= c * t_[i][j];
    }
    // Cost row stores negated objective value in the rhs cell.
  }

  // Returns false on unboundedness.
  bool iterate(bool forbid_artificials) {
    const int jmax = forbid_artificials ? art0_ : cols_;
    for (int guard = 0; guard < 10000; ++guard) {
      int enter = -1;
      for (int j = 0; j < jmax; ++j) {  // Bland: first improving column
        if (t_[m_][j] < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (t_[i][enter] > kEps) {
          const double ratio = t_[i][cols_] / t_[i][enter];
          if (ratio < best - kEps ||
              (ratio < best + kEps && (leave < 0 || basis_[i] < basis_[leave]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex: iteration guard tripped");
  }

  void pivot(int row, int col) {
    const double p = t_[row][col];
    for (int j = 0; j <= cols_; ++j) t_[row][j] /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double factor = t_[i][col];
      if (factor == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) t_[i][j] -= factor * t_[row][j];
    }
    basis_[row] = col;
  }

  // After phase 1, swap any artificial still in the basis (at zero level)
  // for a structural/slack column where possible.
  void pivot_artificials_out() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art0_) continue;
      for (int j = 0; j < art0_; ++j) {
        if (std::fabs(t_[i][j]) > kEps) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  int n_, m_, slack0_, art0_, cols_, n_art_ = 0;
  std::vector<std::vector<double>> t_;
  std::vector<int> basis_;
};

}  // namespace detail

inline Solution solve(const Problem& p) {
  if (p.rows.empty()) {
    // min c.x over x >= 0: zero unless some cost is negative.
    Solution s;
    s.x.assign(p.num_vars, 0.0);
    for (double c : p.objective)
      if (c < 0) return {Status::Unbounded, -std::numeric_limits<double>::infinity(), {}};
    s.status = Status::Optimal;
    s.value = 0.0;
    return s;
  }
  detail::Tableau t(p);
  return t.solve(p.objective);
}

}  // namespace arqddf::lp
