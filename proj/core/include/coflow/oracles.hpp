#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "coflow/model.hpp"
#include "coflow/relaxations.hpp"
#include "coflow/simulator.hpp"

namespace coflow {

struct SeparationWitness {
  double max_violation = 0.0;  // over all non-empty subsets; <= 0 if none violated
  std::vector<int> witness_ids;
};

// Full 2^n - 1 subset enumeration of the prefix oracle's constraint family.
// Reference implementation for tests; |items| capped at 20.
SeparationWitness brute_force_separation(const std::vector<PortItem>& items,
                                         int cores);

enum class ScheduleMode { Divisible, Indivisible };

struct TinyCaps {
  std::int64_t max_total_size = 12;
  int max_flows = 6;
  int max_cores = 2;
  int max_ports = 3;
  std::int64_t max_release = 4;
  std::size_t max_states = 10'000'000;
};

struct ExactOptimum {
  double objective = 0.0;
  ScheduleTrace trace;
};

// Exhaustive integer-time search for the optimal weighted completion time.
// Branches over every feasible set of flow-to-core transmissions at each
// step; indivisible mode commits a coflow to a core at its first
// transmission. Memoized on (time, remaining sizes, commitments).
ExactOptimum exact_opt_tiny(const CoflowInstance& instance, ScheduleMode mode,
                            const TinyCaps& caps = {});

struct RatioReport {
  ScheduleMode mode = ScheduleMode::Divisible;
  bool with_release = false;
  // keyed by coflow id; divisible mode additionally fills flow ratios
  std::map<int, double> coflow_ratio;
  std::map<FlowKey, double> flow_ratio;
  double max_ratio = 0.0;
  double bound = 0.0;  // 6-2/m, 5-2/m, 4m+1 or 4m
  bool satisfied = false;
};

RatioReport audit_bounds(const CoflowInstance& instance,
                         const DivisibleLpSolution& lp,
                         const ScheduleTrace& trace);
RatioReport audit_bounds(const CoflowInstance& instance,
                         const IndivisibleLpSolution& lp,
                         const ScheduleTrace& trace);

}  // namespace coflow
