#pragma once

#include <cstddef>
#include <vector>

namespace coflow {

// Minimize objective . x subject to row . x >= bound for every constraint
// and x_v >= lower_bound_v (0 unless set).
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> bounds;
  std::vector<double> var_lower_bounds;

  explicit LinearProgram(int vars = 0);
  void set_objective(std::vector<double> c);
  void set_lower_bound(int var, double lb);
  // row . x >= bound
  void add_constraint(const std::vector<double>& row, double bound);
  // Sparse form: sum coef_t * x_{var_t} >= bound.
  void add_sparse_constraint(const std::vector<std::pair<int, double>>& terms, double bound);
  std::size_t num_constraints() const { return rows.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  std::vector<double> values;
  double objective_value = 0.0;
};

// Dense-tableau two-phase simplex, Bland's rule (lowest index enters;
// among min-ratio rows the lowest basic variable leaves), so results are
// deterministic and cycling-free.
LpResult solve(const LinearProgram& lp, double eps_feas = 1e-7,
               long max_iterations = 100000);

}  // namespace coflow
