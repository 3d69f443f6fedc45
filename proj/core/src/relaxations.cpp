#include "coflow/relaxations.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "coflow/lp.hpp"

namespace coflow {

std::optional<ViolatedCut> separate_prefix(std::vector<PortItem> items, int cores,
                                           double eps_sep) {
  std::sort(items.begin(), items.end(), [](const PortItem& a, const PortItem& b) {
    return std::tie(a.completion, a.id) < std::tie(b.completion, b.id);
  });

  double d_sum = 0.0, d_sq = 0.0, lhs = 0.0;
  double best_violation = 0.0, best_rhs = 0.0;
  int best_len = 0;
  for (std::size_t f = 0; f < items.size(); ++f) {
    const double d = static_cast<double>(items[f].size);
    d_sum += d;
    d_sq += d * d;
    lhs += d * items[f].completion;
    const double rhs = (d_sum * d_sum + d_sq) / (2.0 * cores);
    if (rhs - lhs > best_violation) {
      best_violation = rhs - lhs;
      best_rhs = rhs;
      best_len = static_cast<int>(f) + 1;
    }
  }
  if (best_violation <= eps_sep) return std::nullopt;

  ViolatedCut cut;
  cut.violation = best_violation;
  cut.rhs = best_rhs;
  for (int f = 0; f < best_len; ++f) cut.member_ids.push_back(items[f].id);
  return cut;
}

namespace {

struct FlowVar {
  FlowKey key;
  int coflow_pos = 0;  // index into instance.coflows
  std::int64_t size = 0;
};

// Runs the solve / separate / add-cut loop. `collect_ports` returns the
// per-port item lists for the current solution values.
template <typename CollectPorts>
LpResult cutting_plane_loop(LinearProgram& lp, const RelaxationOptions& opts,
                            int cores, const CollectPorts& collect_ports,
                            const std::vector<std::vector<std::pair<int, double>>>& cut_terms_by_id,
                            int& rounds, bool& certified,
                            std::vector<double>& objective_per_round) {
  LpResult result;
  for (rounds = 0; ; ++rounds) {
    result = solve(lp, opts.eps_feas);
    if (result.status != LpStatus::Optimal)
      throw std::runtime_error("relaxation LP solve failed");
    objective_per_round.push_back(result.objective_value);

    if (rounds >= opts.max_rounds) {
      certified = false;
      return result;
    }
    bool added = false;
    for (const std::vector<PortItem>& items : collect_ports(result.values)) {
      auto cut = separate_prefix(items, cores, opts.eps_sep);
      if (!cut) continue;
      std::vector<std::pair<int, double>> terms;
      for (int id : cut->member_ids)
        for (const auto& term : cut_terms_by_id[id]) terms.push_back(term);
      lp.add_sparse_constraint(terms, cut->rhs);
      added = true;
    }
    if (!added) return result;
  }
}

}  // namespace

DivisibleLpSolution solve_divisible_lp(const CoflowInstance& instance,
                                       const RelaxationOptions& opts) {
  const int num_coflows = static_cast<int>(instance.coflows.size());
  std::vector<FlowVar> flows;
  for (int ki = 0; ki < num_coflows; ++ki) {
    const Coflow& k = instance.coflows[ki];
    for (const Flow& f : k.flows)
      flows.push_back({{k.id, f.input, f.output}, ki, f.size});
  }
  const int nf = static_cast<int>(flows.size());

  // Variables: one completion per flow, then one per coflow.
  LinearProgram lp(nf + num_coflows);
  std::vector<double> objective(nf + num_coflows, 0.0);
  for (int ki = 0; ki < num_coflows; ++ki)
    objective[nf + ki] = instance.coflows[ki].weight;
  lp.set_objective(objective);

  for (int f = 0; f < nf; ++f) {
    const Coflow& k = instance.coflows[flows[f].coflow_pos];
    lp.set_lower_bound(f, static_cast<double>(k.release + flows[f].size));
    // coflow completion dominates each of its flows
    lp.add_sparse_constraint({{nf + flows[f].coflow_pos, 1.0}, {f, -1.0}}, 0.0);
  }

  // Cuts sum d_f C_f over prefix members; item id = flow variable index.
  std::vector<std::vector<std::pair<int, double>>> cut_terms(nf);
  for (int f = 0; f < nf; ++f)
    cut_terms[f] = {{f, static_cast<double>(flows[f].size)}};

  auto collect_ports = [&](const std::vector<double>& values) {
    std::vector<std::vector<PortItem>> ports;
    for (int side = 0; side < 2; ++side) {
      for (int p = 1; p <= instance.network.ports; ++p) {
        std::vector<PortItem> items;
        for (int f = 0; f < nf; ++f) {
          const int port = side == 0 ? flows[f].key.input : flows[f].key.output;
          if (port == p) items.push_back({f, flows[f].size, values[f]});
        }
        if (!items.empty()) ports.push_back(std::move(items));
      }
    }
    return ports;
  };

  DivisibleLpSolution sol;
  LpResult result = cutting_plane_loop(lp, opts, instance.network.cores,
                                       collect_ports, cut_terms, sol.rounds,
                                       sol.certified, sol.objective_per_round);
  for (int f = 0; f < nf; ++f) sol.flow_completion[flows[f].key] = result.values[f];
  for (int ki = 0; ki < num_coflows; ++ki)
    sol.coflow_completion[instance.coflows[ki].id] = result.values[nf + ki];
  sol.objective = result.objective_value;
  return sol;
}

IndivisibleLpSolution solve_indivisible_lp(const CoflowInstance& instance,
                                           const RelaxationOptions& opts) {
  const int num_coflows = static_cast<int>(instance.coflows.size());
  const PortLoads loads = compute_port_loads(instance);

  LinearProgram lp(num_coflows);
  std::vector<double> objective(num_coflows);
  for (int ki = 0; ki < num_coflows; ++ki) {
    const Coflow& k = instance.coflows[ki];
    objective[ki] = k.weight;
    std::int64_t max_load = 0;
    for (int p = 1; p <= instance.network.ports; ++p)
      max_load = std::max({max_load, loads.input(k.id, p), loads.output(k.id, p)});
    lp.set_lower_bound(ki, static_cast<double>(k.release + max_load));
  }
  lp.set_objective(objective);

  // Cut coefficients depend on the port, so they are resolved per side/port;
  // encode item id = side * N * num_coflows + (port-1) * num_coflows + ki.
  const int n_ports = instance.network.ports;
  std::vector<std::vector<std::pair<int, double>>> cut_terms(2 * n_ports * num_coflows);
  auto item_id = [&](int side, int p, int ki) {
    return side * n_ports * num_coflows + (p - 1) * num_coflows + ki;
  };
  for (int ki = 0; ki < num_coflows; ++ki) {
    const int id = instance.coflows[ki].id;
    for (int p = 1; p <= n_ports; ++p) {
      cut_terms[item_id(0, p, ki)] = {{ki, static_cast<double>(loads.input(id, p))}};
      cut_terms[item_id(1, p, ki)] = {{ki, static_cast<double>(loads.output(id, p))}};
    }
  }

  auto collect_ports = [&](const std::vector<double>& values) {
    std::vector<std::vector<PortItem>> ports;
    for (int side = 0; side < 2; ++side) {
      for (int p = 1; p <= n_ports; ++p) {
        std::vector<PortItem> items;
        for (int ki = 0; ki < num_coflows; ++ki) {
          const int id = instance.coflows[ki].id;
          const std::int64_t load =
              side == 0 ? loads.input(id, p) : loads.output(id, p);
          if (load > 0) items.push_back({item_id(side, p, ki), load, values[ki]});
        }
        if (!items.empty()) ports.push_back(std::move(items));
      }
    }
    return ports;
  };

  IndivisibleLpSolution sol;
  LpResult result = cutting_plane_loop(lp, opts, instance.network.cores,
                                       collect_ports, cut_terms, sol.rounds,
                                       sol.certified, sol.objective_per_round);
  for (int ki = 0; ki < num_coflows; ++ki)
    sol.coflow_completion[instance.coflows[ki].id] = result.values[ki];
  sol.objective = result.objective_value;
  return sol;
}

}  // namespace coflow
