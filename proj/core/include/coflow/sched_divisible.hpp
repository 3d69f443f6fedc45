#pragma once

#include <map>
#include <vector>

#include "coflow/model.hpp"
#include "coflow/relaxations.hpp"
#include "coflow/simulator.hpp"

namespace coflow {

// Flow-driven list scheduling: flows sorted by LP completion time, each
// placed on the core with the least standing input+output load.
struct FlowAssignment {
  std::map<FlowKey, int> core_of_flow;  // 1..m
  std::map<FlowKey, int> priority;      // 1..n rank in C-bar order
  // load[(port, core)] accumulated during the assignment pass
  std::map<std::pair<int, int>, std::int64_t> input_load;
  std::map<std::pair<int, int>, std::int64_t> output_load;
};

FlowAssignment assign_flows(const CoflowInstance& instance,
                            const DivisibleLpSolution& lp);

ScheduleTrace schedule_divisible(const CoflowInstance& instance,
                                 const DivisibleLpSolution& lp);

}  // namespace coflow
