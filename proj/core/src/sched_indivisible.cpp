#include "coflow/sched_indivisible.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <tuple>

namespace coflow {

namespace {

// Assignment + per-core simulation for a given coflow order (positions
// into instance.coflows).
CoflowAssignment assign_in_order(const CoflowInstance& instance,
                                 const std::vector<int>& order) {
  const int m = instance.network.cores;
  const int n_ports = instance.network.ports;
  const PortLoads loads = compute_port_loads(instance);

  CoflowAssignment assignment;
  int rank = 0;
  for (int ki : order) {
    const Coflow& k = instance.coflows[ki];
    assignment.priority[k.id] = ++rank;

    int best_core = 1;
    std::int64_t best_value = -1;
    for (int h = 1; h <= m; ++h) {
      // max over all (i, j) pairs decomposes into two independent maxima
      std::int64_t max_in = 0, max_out = 0;
      for (int p = 1; p <= n_ports; ++p) {
        max_in = std::max(max_in,
                          assignment.input_load[{p, h}] + loads.input(k.id, p));
        max_out = std::max(max_out,
                           assignment.output_load[{p, h}] + loads.output(k.id, p));
      }
      const std::int64_t value = max_in + max_out;
      if (best_value < 0 || value < best_value) {
        best_value = value;
        best_core = h;
      }
    }
    assignment.core_of_coflow[k.id] = best_core;
    for (int p = 1; p <= n_ports; ++p) {
      assignment.input_load[{p, best_core}] += loads.input(k.id, p);
      assignment.output_load[{p, best_core}] += loads.output(k.id, p);
    }
  }
  return assignment;
}

ScheduleTrace simulate_assignment(const CoflowInstance& instance,
                                  const std::vector<int>& order,
                                  const CoflowAssignment& assignment) {
  const int m = instance.network.cores;
  std::vector<std::vector<SimFlow>> per_core(m + 1);
  for (int ki : order) {
    const Coflow& k = instance.coflows[ki];
    std::vector<Flow> flows = k.flows;
    std::sort(flows.begin(), flows.end(), [](const Flow& a, const Flow& b) {
      return std::tie(a.input, a.output) < std::tie(b.input, b.output);
    });
    auto& list = per_core[assignment.core_of_coflow.at(k.id)];
    for (const Flow& f : flows)
      list.push_back({{k.id, f.input, f.output}, f.size, k.release});
  }

  std::vector<std::vector<TransmissionInterval>> partials;
  for (int h = 1; h <= m; ++h) partials.push_back(simulate_core(h, per_core[h]));
  return merge_traces(partials, instance);
}

std::vector<int> lp_order(const CoflowInstance& instance,
                          const IndivisibleLpSolution& lp) {
  std::vector<int> order(instance.coflows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    auto ca = lp.coflow_completion.find(instance.coflows[a].id);
    auto cb = lp.coflow_completion.find(instance.coflows[b].id);
    if (ca == lp.coflow_completion.end() || cb == lp.coflow_completion.end())
      throw std::runtime_error("missing LP completion for a coflow");
    return std::tie(ca->second, instance.coflows[a].id) <
           std::tie(cb->second, instance.coflows[b].id);
  });
  return order;
}

}  // namespace

CoflowAssignment assign_coflows(const CoflowInstance& instance,
                                const IndivisibleLpSolution& lp) {
  return assign_in_order(instance, lp_order(instance, lp));
}

ScheduleTrace schedule_indivisible(const CoflowInstance& instance,
                                   const IndivisibleLpSolution& lp) {
  const std::vector<int> order = lp_order(instance, lp);
  return simulate_assignment(instance, order, assign_in_order(instance, order));
}

ScheduleTrace schedule_baseline(const CoflowInstance& instance,
                                OrderingPolicy policy, std::uint64_t seed) {
  std::vector<int> order(instance.coflows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  switch (policy) {
    case OrderingPolicy::Random: {
      // explicit Fisher-Yates so the shuffle is stable across toolchains
      std::mt19937_64 rng(seed);
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng() % i]);
      break;
    }
    case OrderingPolicy::WeightedTotalSize:
      // Smith-rule analog: largest weight per data unit first
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const Coflow& ka = instance.coflows[a];
        const Coflow& kb = instance.coflows[b];
        const double ra = ka.weight / static_cast<double>(ka.total_size());
        const double rb = kb.weight / static_cast<double>(kb.total_size());
        if (ra != rb) return ra > rb;
        return ka.id < kb.id;
      });
      break;
    case OrderingPolicy::ReleaseOrder:
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tie(instance.coflows[a].release, instance.coflows[a].id) <
               std::tie(instance.coflows[b].release, instance.coflows[b].id);
      });
      break;
  }
  return simulate_assignment(instance, order, assign_in_order(instance, order));
}

}  // namespace coflow
