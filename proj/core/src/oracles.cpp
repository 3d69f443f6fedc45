#include "coflow/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <map>
#include <stdexcept>

namespace coflow {

SeparationWitness brute_force_separation(const std::vector<PortItem>& items,
                                         int cores) {
  const int n = static_cast<int>(items.size());
  if (n > 20) throw std::invalid_argument("brute_force_separation: > 20 items");

  SeparationWitness best;
  best.max_violation = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double d_sum = 0.0, d_sq = 0.0, lhs = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      const double d = static_cast<double>(items[i].size);
      d_sum += d;
      d_sq += d * d;
      lhs += d * items[i].completion;
    }
    const double violation = (d_sum * d_sum + d_sq) / (2.0 * cores) - lhs;
    if (violation > best.max_violation) {
      best.max_violation = violation;
      best.witness_ids.clear();
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) best.witness_ids.push_back(items[i].id);
    }
  }
  return best;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SearchFlow {
  int coflow_pos = 0;
  int input = 0;
  int output = 0;
  std::int64_t size = 0;
};

struct Search {
  const CoflowInstance& instance;
  ScheduleMode mode;
  const TinyCaps& caps;
  std::vector<SearchFlow> flows;
  std::int64_t horizon = 0;

  // State: remaining size per flow plus a core commitment per flow
  // (divisible) or per coflow (indivisible); 0 = uncommitted.
  struct State {
    std::int64_t t = 0;
    std::vector<std::int64_t> remaining;
    std::vector<int> commit;
    bool operator<(const State& o) const {
      return std::tie(t, remaining, commit) < std::tie(o.t, o.remaining, o.commit);
    }
  };
  std::map<State, double> memo;

  // One time step's transmissions: (flow index, core).
  using Action = std::vector<std::pair<int, int>>;

  int commit_slot(int f) const {
    return mode == ScheduleMode::Divisible ? f : flows[f].coflow_pos;
  }

  void enumerate_actions(const State& s, int f, Action& current,
                         std::vector<Action>& out,
                         std::vector<std::vector<bool>>& busy_in,
                         std::vector<std::vector<bool>>& busy_out) {
    const int nf = static_cast<int>(flows.size());
    while (f < nf &&
           (s.remaining[f] == 0 ||
            instance.coflows[flows[f].coflow_pos].release > s.t))
      ++f;
    if (f == nf) {
      out.push_back(current);
      return;
    }
    // idle choice
    enumerate_actions(s, f + 1, current, out, busy_in, busy_out);
    // Respect commitments from the state and from flows already placed in
    // this same step (matters for indivisible per-coflow slots).
    const int slot = commit_slot(f);
    int committed = s.commit[slot];
    for (const auto& [g, hg] : current)
      if (commit_slot(g) == slot) committed = hg;
    for (int h = 1; h <= instance.network.cores; ++h) {
      if (committed != 0 && h != committed) continue;
      if (busy_in[h][flows[f].input] || busy_out[h][flows[f].output]) continue;
      busy_in[h][flows[f].input] = true;
      busy_out[h][flows[f].output] = true;
      current.push_back({f, h});
      enumerate_actions(s, f + 1, current, out, busy_in, busy_out);
      current.pop_back();
      busy_in[h][flows[f].input] = false;
      busy_out[h][flows[f].output] = false;
    }
  }

  std::vector<Action> actions(const State& s) {
    std::vector<Action> out;
    Action current;
    std::vector<std::vector<bool>> busy_in(
        instance.network.cores + 1,
        std::vector<bool>(instance.network.ports + 1, false));
    auto busy_out = busy_in;
    enumerate_actions(s, 0, current, out, busy_in, busy_out);
    return out;
  }

  // Applies `a` for one time unit; returns the weighted-completion
  // contribution of coflows finishing at s.t + 1.
  double apply(State& s, const Action& a) const {
    for (const auto& [f, h] : a) {
      s.remaining[f] -= 1;
      s.commit[commit_slot(f)] = h;
    }
    s.t += 1;
    double contribution = 0.0;
    for (std::size_t ki = 0; ki < instance.coflows.size(); ++ki) {
      bool done = true, touched = false;
      for (std::size_t f = 0; f < flows.size(); ++f) {
        if (flows[f].coflow_pos != static_cast<int>(ki)) continue;
        if (s.remaining[f] > 0) done = false;
      }
      for (const auto& [f, h] : a) {
        (void)h;
        if (flows[f].coflow_pos == static_cast<int>(ki) && s.remaining[f] == 0)
          touched = true;
      }
      if (done && touched)
        contribution += instance.coflows[ki].weight * static_cast<double>(s.t);
    }
    return contribution;
  }

  double value(const State& s) {
    std::int64_t total = 0;
    for (std::int64_t r : s.remaining) total += r;
    if (total == 0) return 0.0;
    if (s.t >= horizon) return kInf;

    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    if (memo.size() >= caps.max_states)
      throw std::runtime_error("exact_opt_tiny: state cap exceeded");

    // Nothing released yet: jump to the next release.
    bool any_released = false;
    std::int64_t next_release = std::numeric_limits<std::int64_t>::max();
    for (std::size_t f = 0; f < flows.size(); ++f) {
      if (s.remaining[f] == 0) continue;
      const std::int64_t r = instance.coflows[flows[f].coflow_pos].release;
      if (r <= s.t)
        any_released = true;
      else
        next_release = std::min(next_release, r);
    }
    double best = kInf;
    if (!any_released) {
      State next = s;
      next.t = next_release;
      best = value(next);
    } else {
      for (const Action& a : actions(s)) {
        State next = s;
        const double contribution = apply(next, a);
        const double v = value(next);
        if (v < kInf) best = std::min(best, contribution + v);
      }
    }
    memo[s] = best;
    return best;
  }
};

}  // namespace

ExactOptimum exact_opt_tiny(const CoflowInstance& instance, ScheduleMode mode,
                            const TinyCaps& caps) {
  std::int64_t total_size = 0, max_release = 0;
  int num_flows = 0;
  for (const Coflow& k : instance.coflows) {
    total_size += k.total_size();
    max_release = std::max(max_release, k.release);
    num_flows += static_cast<int>(k.flows.size());
  }
  if (total_size > caps.max_total_size || num_flows > caps.max_flows ||
      instance.network.cores > caps.max_cores ||
      instance.network.ports > caps.max_ports || max_release > caps.max_release)
    throw std::invalid_argument("exact_opt_tiny: instance exceeds caps");

  Search search{instance, mode, caps};
  for (std::size_t ki = 0; ki < instance.coflows.size(); ++ki)
    for (const Flow& f : instance.coflows[ki].flows)
      search.flows.push_back({static_cast<int>(ki), f.input, f.output, f.size});
  search.horizon = max_release + total_size;

  Search::State root;
  root.remaining.reserve(search.flows.size());
  for (const SearchFlow& f : search.flows) root.remaining.push_back(f.size);
  root.commit.assign(mode == ScheduleMode::Divisible ? search.flows.size()
                                                     : instance.coflows.size(),
                     0);

  ExactOptimum result;
  result.objective = search.value(root);
  if (result.objective >= kInf)
    throw std::runtime_error("exact_opt_tiny: no feasible schedule found");

  // Reconstruct a witness by walking forward along an optimal action chain.
  std::vector<std::vector<TransmissionInterval>> partials(instance.network.cores + 1);
  Search::State s = root;
  double remaining_value = result.objective;
  while (true) {
    std::int64_t total = 0;
    for (std::int64_t r : s.remaining) total += r;
    if (total == 0) break;

    bool any_released = false;
    std::int64_t next_release = std::numeric_limits<std::int64_t>::max();
    for (std::size_t f = 0; f < search.flows.size(); ++f) {
      if (s.remaining[f] == 0) continue;
      const std::int64_t r = instance.coflows[search.flows[f].coflow_pos].release;
      if (r <= s.t)
        any_released = true;
      else
        next_release = std::min(next_release, r);
    }
    if (!any_released) {
      s.t = next_release;
      continue;
    }
    bool stepped = false;
    for (const Search::Action& a : search.actions(s)) {
      Search::State next = s;
      const double contribution = search.apply(next, a);
      const double v = search.value(next);
      if (v < kInf && std::abs(contribution + v - remaining_value) < 1e-6) {
        for (const auto& [f, h] : a) {
          const SearchFlow& sf = search.flows[f];
          partials[h].push_back(
              {{instance.coflows[sf.coflow_pos].id, sf.input, sf.output},
               h, s.t, s.t + 1});
        }
        remaining_value -= contribution;
        s = next;
        stepped = true;
        break;
      }
    }
    if (!stepped)
      throw std::runtime_error("exact_opt_tiny: reconstruction failed");
  }

  // Coalesce the unit steps before merging.
  for (auto& part : partials) {
    std::sort(part.begin(), part.end(),
              [](const TransmissionInterval& a, const TransmissionInterval& b) {
                return std::tie(a.flow, a.start) < std::tie(b.flow, b.start);
              });
    std::vector<TransmissionInterval> merged;
    for (const TransmissionInterval& iv : part) {
      if (!merged.empty() && merged.back().flow == iv.flow &&
          merged.back().end == iv.start)
        merged.back().end = iv.end;
      else
        merged.push_back(iv);
    }
    part = std::move(merged);
  }
  result.trace = merge_traces(
      std::vector<std::vector<TransmissionInterval>>(partials.begin() + 1,
                                                     partials.end()),
      instance);
  return result;
}

namespace {

bool has_release(const CoflowInstance& instance) {
  for (const Coflow& k : instance.coflows)
    if (k.release > 0) return true;
  return false;
}

}  // namespace

RatioReport audit_bounds(const CoflowInstance& instance,
                         const DivisibleLpSolution& lp,
                         const ScheduleTrace& trace) {
  RatioReport report;
  report.mode = ScheduleMode::Divisible;
  report.with_release = has_release(instance);
  const double m = static_cast<double>(instance.network.cores);
  report.bound = (report.with_release ? 6.0 : 5.0) - 2.0 / m;

  for (const auto& [key, completed] : trace.flow_completion) {
    auto it = lp.flow_completion.find(key);
    if (it == lp.flow_completion.end())
      throw std::invalid_argument("audit_bounds: trace/LP flow mismatch");
    const double ratio = static_cast<double>(completed) / it->second;
    report.flow_ratio[key] = ratio;
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  for (const auto& [id, completed] : trace.coflow_completion) {
    auto it = lp.coflow_completion.find(id);
    if (it == lp.coflow_completion.end())
      throw std::invalid_argument("audit_bounds: trace/LP coflow mismatch");
    report.coflow_ratio[id] = static_cast<double>(completed) / it->second;
  }
  report.satisfied = report.max_ratio <= report.bound + 1e-9;
  return report;
}

RatioReport audit_bounds(const CoflowInstance& instance,
                         const IndivisibleLpSolution& lp,
                         const ScheduleTrace& trace) {
  RatioReport report;
  report.mode = ScheduleMode::Indivisible;
  report.with_release = has_release(instance);
  const double m = static_cast<double>(instance.network.cores);
  report.bound = report.with_release ? 4.0 * m + 1.0 : 4.0 * m;

  for (const auto& [id, completed] : trace.coflow_completion) {
    auto it = lp.coflow_completion.find(id);
    if (it == lp.coflow_completion.end())
      throw std::invalid_argument("audit_bounds: trace/LP coflow mismatch");
    const double ratio = static_cast<double>(completed) / it->second;
    report.coflow_ratio[id] = ratio;
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  report.satisfied = report.max_ratio <= report.bound + 1e-9;
  return report;
}

}  // namespace coflow
