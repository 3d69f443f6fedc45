#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "coflow/model.hpp"
#include "coflow/relaxations.hpp"
#include "coflow/simulator.hpp"

namespace coflow {

// Coflow-driven list scheduling: whole coflows placed on the core
// minimizing max_i(load_I + L_ik) + max_j(load_O + L_jk).
struct CoflowAssignment {
  std::map<int, int> core_of_coflow;  // 1..m
  std::map<int, int> priority;        // rank in C-bar order
  std::map<std::pair<int, int>, std::int64_t> input_load;   // (port, core)
  std::map<std::pair<int, int>, std::int64_t> output_load;
};

CoflowAssignment assign_coflows(const CoflowInstance& instance,
                                const IndivisibleLpSolution& lp);

ScheduleTrace schedule_indivisible(const CoflowInstance& instance,
                                   const IndivisibleLpSolution& lp);

enum class OrderingPolicy { Random, WeightedTotalSize, ReleaseOrder };

// Same core-assignment rule and simulator as schedule_indivisible but the
// coflow order comes from the policy instead of the LP. Comparison baseline.
ScheduleTrace schedule_baseline(const CoflowInstance& instance,
                                OrderingPolicy policy, std::uint64_t seed = 0);

}  // namespace coflow
