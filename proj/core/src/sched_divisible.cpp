#include "coflow/sched_divisible.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace coflow {

namespace {

struct OrderedFlow {
  FlowKey key;
  std::int64_t size = 0;
  std::int64_t release = 0;
  double completion = 0.0;
};

// Non-decreasing C-bar, ties by (coflow id, input, output).
std::vector<OrderedFlow> ordered_flows(const CoflowInstance& instance,
                                       const DivisibleLpSolution& lp) {
  std::vector<OrderedFlow> flows;
  for (const Coflow& k : instance.coflows) {
    for (const Flow& f : k.flows) {
      const FlowKey key{k.id, f.input, f.output};
      auto it = lp.flow_completion.find(key);
      if (it == lp.flow_completion.end())
        throw std::runtime_error("missing LP completion for a flow");
      flows.push_back({key, f.size, k.release, it->second});
    }
  }
  std::stable_sort(flows.begin(), flows.end(),
                   [](const OrderedFlow& a, const OrderedFlow& b) {
                     return std::tie(a.completion, a.key) <
                            std::tie(b.completion, b.key);
                   });
  return flows;
}

}  // namespace

FlowAssignment assign_flows(const CoflowInstance& instance,
                            const DivisibleLpSolution& lp) {
  const int m = instance.network.cores;
  FlowAssignment assignment;
  int rank = 0;
  for (const OrderedFlow& f : ordered_flows(instance, lp)) {
    assignment.priority[f.key] = ++rank;
    int best_core = 1;
    std::int64_t best_sum = -1;
    for (int h = 1; h <= m; ++h) {
      const std::int64_t sum = assignment.input_load[{f.key.input, h}] +
                               assignment.output_load[{f.key.output, h}];
      if (best_sum < 0 || sum < best_sum) {
        best_sum = sum;
        best_core = h;
      }
    }
    assignment.core_of_flow[f.key] = best_core;
    assignment.input_load[{f.key.input, best_core}] += f.size;
    assignment.output_load[{f.key.output, best_core}] += f.size;
  }
  return assignment;
}

ScheduleTrace schedule_divisible(const CoflowInstance& instance,
                                 const DivisibleLpSolution& lp) {
  const FlowAssignment assignment = assign_flows(instance, lp);
  const int m = instance.network.cores;

  std::vector<std::vector<SimFlow>> per_core(m + 1);
  for (const OrderedFlow& f : ordered_flows(instance, lp))
    per_core[assignment.core_of_flow.at(f.key)].push_back(
        {f.key, f.size, f.release});

  std::vector<std::vector<TransmissionInterval>> partials;
  for (int h = 1; h <= m; ++h) partials.push_back(simulate_core(h, per_core[h]));
  return merge_traces(partials, instance);
}

}  // namespace coflow
