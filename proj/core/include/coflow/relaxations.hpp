#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "coflow/model.hpp"
#include "coflow/simulator.hpp"

namespace coflow {

struct PortItem {
  int id = 0;           // flow or coflow index, used for deterministic ties
  std::int64_t size = 0;
  double completion = 0.0;  // candidate C value
};

struct ViolatedCut {
  std::vector<int> member_ids;  // a prefix of the port's items in C order
  double violation = 0.0;       // (1/2m)(d(S)^2 + d2(S)) - sum d_l C_l
  double rhs = 0.0;             // (1/2m)(d(S)^2 + d2(S))
};

// Most-violated prefix of the items sorted by candidate completion
// (ties by id). Adding item l to S changes the violation by
// d_l((d(S)+d_l)/m - C_l), which grows with d(S), so some subset maximizer
// is always a full prefix; the brute-force oracle cross-checks this.
std::optional<ViolatedCut> separate_prefix(std::vector<PortItem> items, int cores,
                                           double eps_sep);

struct DivisibleLpSolution {
  std::map<FlowKey, double> flow_completion;   // C-bar per flow
  std::map<int, double> coflow_completion;     // C-bar per coflow
  double objective = 0.0;
  int rounds = 0;
  bool certified = true;       // false iff the round limit was hit
  std::vector<double> objective_per_round;
};

struct IndivisibleLpSolution {
  std::map<int, double> coflow_completion;
  double objective = 0.0;
  int rounds = 0;
  bool certified = true;
  std::vector<double> objective_per_round;
};

struct RelaxationOptions {
  double eps_sep = 1e-6;
  double eps_feas = 1e-7;
  int max_rounds = 200;
};

DivisibleLpSolution solve_divisible_lp(const CoflowInstance& instance,
                                       const RelaxationOptions& opts = {});

IndivisibleLpSolution solve_indivisible_lp(const CoflowInstance& instance,
                                           const RelaxationOptions& opts = {});

}  // namespace coflow
