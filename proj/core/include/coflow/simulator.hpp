#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coflow/model.hpp"

namespace coflow {

// (coflow, input, output) identifies a flow globally; at most one flow per
// link within a coflow makes this unique.
struct FlowKey {
  int coflow_id = 0;
  int input = 0;
  int output = 0;
  auto operator<=>(const FlowKey&) const = default;
};

struct TransmissionInterval {
  FlowKey flow;
  int core = 0;  // 1..m
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::int64_t amount() const { return end - start; }
};

struct ScheduleTrace {
  std::vector<TransmissionInterval> intervals;
  std::map<FlowKey, std::int64_t> flow_completion;
  std::map<int, std::int64_t> coflow_completion;
  double objective = 0.0;
};

// One entry of a per-core priority list. Priority is the position in the
// list; the simulator never reorders.
struct SimFlow {
  FlowKey key;
  std::int64_t size = 0;
  std::int64_t release = 0;
};

// Event-driven rate-0/1 execution of one core's priority list: at every
// completion or release, rescan the list in priority order and greedily
// claim idle (input, output) pairs. Preemption falls out of the rescan.
std::vector<TransmissionInterval> simulate_core(
    int core, const std::vector<SimFlow>& flows);

ScheduleTrace merge_traces(const std::vector<std::vector<TransmissionInterval>>& partials,
                           const CoflowInstance& instance);

struct FeasibilityReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Port exclusivity per (core, port), release respect, size conservation,
// completion consistency.
FeasibilityReport verify_trace(const ScheduleTrace& trace,
                               const CoflowInstance& instance);

}  // namespace coflow
