#include "coflow/simulator.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace coflow {

namespace {
constexpr std::int64_t kNoEvent = std::numeric_limits<std::int64_t>::max();
}

std::vector<TransmissionInterval> simulate_core(
    int core, const std::vector<SimFlow>& flows) {
  std::vector<TransmissionInterval> intervals;
  const int n = static_cast<int>(flows.size());
  if (n == 0) return intervals;

  std::vector<std::int64_t> remaining(n);
  std::int64_t t = kNoEvent;
  for (int f = 0; f < n; ++f) {
    remaining[f] = flows[f].size;
    t = std::min(t, flows[f].release);
  }

  int incomplete = n;
  while (incomplete > 0) {
    // Greedy claim pass in priority order.
    std::set<int> busy_in, busy_out;
    std::vector<int> running;
    for (int f = 0; f < n; ++f) {
      if (remaining[f] == 0 || flows[f].release > t) continue;
      if (busy_in.count(flows[f].key.input) || busy_out.count(flows[f].key.output))
        continue;
      busy_in.insert(flows[f].key.input);
      busy_out.insert(flows[f].key.output);
      running.push_back(f);
    }

    std::int64_t next_event = kNoEvent;
    for (int f : running) next_event = std::min(next_event, t + remaining[f]);
    for (int f = 0; f < n; ++f)
      if (remaining[f] > 0 && flows[f].release > t)
        next_event = std::min(next_event, flows[f].release);

    for (int f : running) {
      intervals.push_back({flows[f].key, core, t, next_event});
      remaining[f] -= next_event - t;
      if (remaining[f] == 0) --incomplete;
    }
    t = next_event;
  }

  // Coalesce back-to-back intervals of the same flow.
  std::vector<TransmissionInterval> merged;
  for (const TransmissionInterval& iv : intervals) {
    if (!merged.empty() && merged.back().flow == iv.flow &&
        merged.back().end == iv.start) {
      merged.back().end = iv.end;
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

ScheduleTrace merge_traces(
    const std::vector<std::vector<TransmissionInterval>>& partials,
    const CoflowInstance& instance) {
  ScheduleTrace trace;
  std::set<std::pair<FlowKey, int>> flow_cores;
  for (const auto& part : partials) {
    for (const TransmissionInterval& iv : part) {
      trace.intervals.push_back(iv);
      flow_cores.insert({iv.flow, iv.core});
      auto [it, inserted] = trace.flow_completion.insert({iv.flow, iv.end});
      if (!inserted) it->second = std::max(it->second, iv.end);
    }
  }
  for (const auto& [key, core] : flow_cores) {
    (void)core;
    auto next = flow_cores.upper_bound({key, std::numeric_limits<int>::max()});
    if (std::distance(flow_cores.lower_bound({key, 0}), next) > 1)
      throw std::runtime_error("flow appears on more than one core");
  }
  std::sort(trace.intervals.begin(), trace.intervals.end(),
            [](const TransmissionInterval& a, const TransmissionInterval& b) {
              return std::tie(a.core, a.start, a.flow) <
                     std::tie(b.core, b.start, b.flow);
            });

  for (const Coflow& k : instance.coflows) {
    std::int64_t completion = 0;
    for (const Flow& f : k.flows) {
      auto it = trace.flow_completion.find({k.id, f.input, f.output});
      if (it != trace.flow_completion.end())
        completion = std::max(completion, it->second);
    }
    if (!k.flows.empty()) {
      trace.coflow_completion[k.id] = completion;
      trace.objective += k.weight * static_cast<double>(completion);
    }
  }
  return trace;
}

FeasibilityReport verify_trace(const ScheduleTrace& trace,
                               const CoflowInstance& instance) {
  FeasibilityReport report;
  auto add = [&report](const std::string& msg) { report.violations.push_back(msg); };

  // Port exclusivity: per (core, side, port), intervals must not overlap.
  struct Busy {
    std::vector<std::pair<std::int64_t, std::int64_t>> spans;
  };
  std::map<std::tuple<int, char, int>, Busy> port_use;
  std::map<FlowKey, std::int64_t> transmitted;
  std::map<FlowKey, std::set<int>> cores_of_flow;

  for (const TransmissionInterval& iv : trace.intervals) {
    std::ostringstream where;
    where << "flow (" << iv.flow.coflow_id << "," << iv.flow.input << ","
          << iv.flow.output << ") core " << iv.core << " [" << iv.start << ","
          << iv.end << "): ";
    if (iv.start >= iv.end) add(where.str() + "empty or inverted interval");
    const Coflow* k = instance.find_coflow(iv.flow.coflow_id);
    if (k == nullptr) {
      add(where.str() + "unknown coflow");
      continue;
    }
    if (iv.start < k->release) add(where.str() + "starts before release");
    if (iv.core < 1 || iv.core > instance.network.cores)
      add(where.str() + "core out of range");
    port_use[{iv.core, 'I', iv.flow.input}].spans.push_back({iv.start, iv.end});
    port_use[{iv.core, 'O', iv.flow.output}].spans.push_back({iv.start, iv.end});
    transmitted[iv.flow] += iv.amount();
    cores_of_flow[iv.flow].insert(iv.core);
  }

  for (auto& [key, busy] : port_use) {
    std::sort(busy.spans.begin(), busy.spans.end());
    for (std::size_t i = 1; i < busy.spans.size(); ++i) {
      if (busy.spans[i].first < busy.spans[i - 1].second) {
        std::ostringstream msg;
        msg << (std::get<1>(key) == 'I' ? "input" : "output")
            << " port conflict: core " << std::get<0>(key) << " port "
            << std::get<2>(key) << " at time " << busy.spans[i].first;
        add(msg.str());
      }
    }
  }

  for (const Coflow& k : instance.coflows) {
    for (const Flow& f : k.flows) {
      const FlowKey key{k.id, f.input, f.output};
      std::ostringstream where;
      where << "flow (" << k.id << "," << f.input << "," << f.output << "): ";
      auto it = transmitted.find(key);
      const std::int64_t sent = it == transmitted.end() ? 0 : it->second;
      if (sent != f.size) add(where.str() + "size conservation violated");
      if (cores_of_flow[key].size() > 1) add(where.str() + "spans multiple cores");
      auto cit = trace.flow_completion.find(key);
      if (cit != trace.flow_completion.end()) {
        std::int64_t last_end = 0;
        for (const TransmissionInterval& iv : trace.intervals)
          if (iv.flow == key) last_end = std::max(last_end, iv.end);
        if (cit->second != last_end)
          add(where.str() + "flow completion inconsistent with intervals");
      } else if (f.size > 0) {
        add(where.str() + "missing completion time");
      }
    }
    auto kit = trace.coflow_completion.find(k.id);
    std::int64_t last = 0;
    for (const Flow& f : k.flows) {
      auto cit = trace.flow_completion.find({k.id, f.input, f.output});
      if (cit != trace.flow_completion.end()) last = std::max(last, cit->second);
    }
    if (kit == trace.coflow_completion.end() || kit->second != last) {
      std::ostringstream msg;
      msg << "coflow " << k.id << ": completion inconsistent with flows";
      add(msg.str());
    }
  }
  return report;
}

}  // namespace coflow
