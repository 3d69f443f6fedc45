#include "coflow/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace coflow {

namespace {
constexpr double kPivotTol = 1e-9;
}

LinearProgram::LinearProgram(int vars)
    : num_vars(vars), objective(vars, 0.0), var_lower_bounds(vars, 0.0) {}

void LinearProgram::set_objective(std::vector<double> c) {
  if (static_cast<int>(c.size()) != num_vars)
    throw std::invalid_argument("objective dimension mismatch");
  objective = std::move(c);
}

void LinearProgram::set_lower_bound(int var, double lb) {
  var_lower_bounds.at(var) = lb;
}

void LinearProgram::add_constraint(const std::vector<double>& row, double bound) {
  if (static_cast<int>(row.size()) != num_vars)
    throw std::invalid_argument("constraint dimension mismatch");
  rows.push_back(row);
  bounds.push_back(bound);
}

void LinearProgram::add_sparse_constraint(
    const std::vector<std::pair<int, double>>& terms, double bound) {
  std::vector<double> row(num_vars, 0.0);
  for (const auto& [var, coef] : terms) row.at(var) += coef;
  rows.push_back(std::move(row));
  bounds.push_back(bound);
}

namespace {

// Tableau over columns [structural | slack | artificial | rhs], rows in
// canonical form (basis columns are unit vectors).
struct Tableau {
  int n = 0;       // structural
  int ns = 0;      // slacks
  int na = 0;      // artificials
  std::vector<std::vector<double>> rows;  // each of width n + ns + na
  std::vector<double> rhs;
  std::vector<int> basis;  // basic variable per row

  int width() const { return n + ns + na; }

  void pivot(int r, int col) {
    const double p = rows[r][col];
    for (double& v : rows[r]) v /= p;
    rhs[r] /= p;
    rows[r][col] = 1.0;  // kill roundoff on the pivot itself
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      const double factor = rows[i][col];
      if (std::abs(factor) < kPivotTol) continue;
      for (int j = 0; j < width(); ++j) rows[i][j] -= factor * rows[r][j];
      rows[i][col] = 0.0;
      rhs[i] -= factor * rhs[r];
    }
    basis[r] = col;
  }
};

// Bland's rule iteration on `cost` (reduced costs). Returns Optimal,
// Unbounded or IterationLimit. `allowed` masks columns that may enter.
LpStatus run_simplex(Tableau& t, std::vector<double>& cost, double& z,
                     const std::vector<bool>& allowed, long& iterations_left) {
  for (;;) {
    int entering = -1;
    for (int j = 0; j < t.width(); ++j) {
      if (allowed[j] && cost[j] < -kPivotTol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return LpStatus::Optimal;
    if (iterations_left-- <= 0) return LpStatus::IterationLimit;

    int leaving_row = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const double a = t.rows[i][entering];
      if (a <= kPivotTol) continue;
      const double ratio = t.rhs[i] / a;
      if (ratio < best_ratio - kPivotTol ||
          (ratio < best_ratio + kPivotTol &&
           (leaving_row < 0 || t.basis[i] < t.basis[leaving_row]))) {
        best_ratio = ratio;
        leaving_row = static_cast<int>(i);
      }
    }
    if (leaving_row < 0) return LpStatus::Unbounded;

    t.pivot(leaving_row, entering);
    // Keep the cost row canonical.
    const double factor = cost[entering];
    for (int j = 0; j < t.width(); ++j)
      cost[j] -= factor * t.rows[leaving_row][j];
    cost[entering] = 0.0;
    z -= factor * t.rhs[leaving_row];
  }
}

}  // namespace

LpResult solve(const LinearProgram& lp, double eps_feas, long max_iterations) {
  const int n = lp.num_vars;
  const int mc = static_cast<int>(lp.rows.size());

  // Shift out the variable lower bounds: x = y + lb, y >= 0.
  std::vector<double> shifted_bounds(mc);
  for (int i = 0; i < mc; ++i) {
    double dot = 0.0;
    for (int j = 0; j < n; ++j) dot += lp.rows[i][j] * lp.var_lower_bounds[j];
    shifted_bounds[i] = lp.bounds[i] - dot;
  }

  Tableau t;
  t.n = n;
  t.ns = mc;
  // A y - s = b'; rows with b' < 0 are negated so every rhs is nonnegative.
  // Negated rows get their slack as the initial basic variable, the rest
  // need an artificial.
  std::vector<int> art_of_row(mc, -1);
  int na = 0;
  for (int i = 0; i < mc; ++i)
    if (shifted_bounds[i] >= 0) art_of_row[i] = na++;
  t.na = na;

  t.rows.assign(mc, std::vector<double>(t.width(), 0.0));
  t.rhs.assign(mc, 0.0);
  t.basis.assign(mc, -1);
  for (int i = 0; i < mc; ++i) {
    const double sign = shifted_bounds[i] >= 0 ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) t.rows[i][j] = sign * lp.rows[i][j];
    t.rows[i][n + i] = -sign;
    t.rhs[i] = sign * shifted_bounds[i];
    if (art_of_row[i] >= 0) {
      t.rows[i][n + mc + art_of_row[i]] = 1.0;
      t.basis[i] = n + mc + art_of_row[i];
    } else {
      t.basis[i] = n + i;
    }
  }

  long iterations_left = max_iterations;
  LpResult result;

  // Phase 1: minimize the artificial sum.
  if (na > 0) {
    std::vector<double> cost(t.width(), 0.0);
    double z = 0.0;
    for (int a = n + mc; a < t.width(); ++a) cost[a] = 1.0;
    for (int i = 0; i < mc; ++i) {
      if (t.basis[i] < n + mc) continue;
      for (int j = 0; j < t.width(); ++j) cost[j] -= t.rows[i][j];
      z -= t.rhs[i];
    }
    std::vector<bool> allowed(t.width(), true);
    const LpStatus st = run_simplex(t, cost, z, allowed, iterations_left);
    if (st == LpStatus::IterationLimit) {
      result.status = st;
      return result;
    }
    if (-z > eps_feas) {  // z accumulated as -objective
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive leftover artificials out of the basis; rows where that is
    // impossible are redundant and dropped.
    for (int i = mc - 1; i >= 0; --i) {
      if (t.basis[i] < n + mc) continue;
      int col = -1;
      for (int j = 0; j < n + mc; ++j) {
        if (std::abs(t.rows[i][j]) > 1e-7) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        t.pivot(i, col);
      } else {
        t.rows.erase(t.rows.begin() + i);
        t.rhs.erase(t.rhs.begin() + i);
        t.basis.erase(t.basis.begin() + i);
      }
    }
  }

  // Phase 2: minimize the shifted objective.
  {
    std::vector<double> cost(t.width(), 0.0);
    double z = 0.0;
    for (int j = 0; j < n; ++j) cost[j] = lp.objective[j];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const int b = t.basis[i];
      if (b >= n || std::abs(lp.objective[b]) < kPivotTol) continue;
      const double cb = lp.objective[b];
      for (int j = 0; j < t.width(); ++j) cost[j] -= cb * t.rows[i][j];
      z -= cb * t.rhs[i];
    }
    std::vector<bool> allowed(t.width(), true);
    for (int a = n + mc; a < t.width(); ++a) allowed[a] = false;
    const LpStatus st = run_simplex(t, cost, z, allowed, iterations_left);
    if (st != LpStatus::Optimal) {
      result.status = st;
      return result;
    }
  }

  result.status = LpStatus::Optimal;
  result.values.assign(n, 0.0);
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.basis[i] < n) result.values[t.basis[i]] = t.rhs[i];
  double obj = 0.0;
  for (int j = 0; j < n; ++j) {
    result.values[j] += lp.var_lower_bounds[j];
    obj += lp.objective[j] * result.values[j];
  }
  result.objective_value = obj;
  return result;
}

}  // namespace coflow
