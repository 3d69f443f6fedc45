#include <set>

#include "doctest.h"

#include "coflow/io.hpp"
#include "coflow/oracles.hpp"
#include "coflow/sched_divisible.hpp"
#include "coflow/sched_indivisible.hpp"

using namespace coflow;

namespace {

DivisibleLpSolution fake_divisible_lp(const CoflowInstance& instance,
                                      const std::map<FlowKey, double>& completions) {
  DivisibleLpSolution lp;
  lp.flow_completion = completions;
  for (const Coflow& k : instance.coflows) {
    double c = 0.0;
    for (const Flow& f : k.flows)
      c = std::max(c, completions.at({k.id, f.input, f.output}));
    lp.coflow_completion[k.id] = c;
  }
  return lp;
}

IndivisibleLpSolution fake_indivisible_lp(const std::map<int, double>& completions) {
  IndivisibleLpSolution lp;
  lp.coflow_completion = completions;
  return lp;
}

}  // namespace

TEST_CASE("assign_flows balances a contended link") {
  CoflowInstance instance;
  instance.network = {2, 1};
  for (int id = 1; id <= 3; ++id)
    instance.coflows.push_back({id, 1.0, 0, {{id, 1, 1, 3}}});
  const auto lp = fake_divisible_lp(instance, {{{1, 1, 1}, 1.0},
                                               {{2, 1, 1}, 2.0},
                                               {{3, 1, 1}, 3.0}});
  const FlowAssignment assignment = assign_flows(instance, lp);
  CHECK(assignment.core_of_flow.at({1, 1, 1}) == 1);
  CHECK(assignment.core_of_flow.at({2, 1, 1}) == 2);
  CHECK(assignment.core_of_flow.at({3, 1, 1}) == 1);  // 6 vs 6, lowest index
  CHECK(assignment.priority.at({1, 1, 1}) == 1);
  CHECK(assignment.priority.at({3, 1, 1}) == 3);
}

TEST_CASE("assign_flows with one core") {
  CoflowInstance instance;
  instance.network = {1, 2};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 2}, {1, 2, 2, 1}}});
  const auto lp = fake_divisible_lp(instance,
                                    {{{1, 1, 1}, 2.0}, {{1, 2, 2}, 1.0}});
  const FlowAssignment assignment = assign_flows(instance, lp);
  CHECK(assignment.core_of_flow.at({1, 1, 1}) == 1);
  CHECK(assignment.core_of_flow.at({1, 2, 2}) == 1);
  CHECK(assignment.priority.at({1, 2, 2}) == 1);  // smaller C-bar first
}

TEST_CASE("assign_flows sums input and output loads") {
  CoflowInstance instance;
  instance.network = {2, 2};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 4}, {1, 1, 2, 1}}});
  const auto lp = fake_divisible_lp(instance,
                                    {{{1, 1, 1}, 1.0}, {{1, 1, 2}, 2.0}});
  const FlowAssignment assignment = assign_flows(instance, lp);
  CHECK(assignment.core_of_flow.at({1, 1, 1}) == 1);
  // core 1 already carries load_I(1)=4, so (1,2) goes to core 2
  CHECK(assignment.core_of_flow.at({1, 1, 2}) == 2);
}

TEST_CASE("schedule_divisible waits for release") {
  CoflowInstance instance;
  instance.network = {1, 1};
  instance.coflows.push_back({1, 1.0, 2, {{1, 1, 1, 4}}});
  const auto trace = schedule_divisible(
      instance, fake_divisible_lp(instance, {{{1, 1, 1}, 6.0}}));
  REQUIRE(trace.intervals.size() == 1);
  CHECK(trace.intervals[0].start == 2);
  CHECK(trace.intervals[0].end == 6);
  CHECK(trace.coflow_completion.at(1) == 6);
}

TEST_CASE("schedule_divisible serializes a shared link") {
  CoflowInstance instance;
  instance.network = {1, 1};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 2}}});
  instance.coflows.push_back({2, 1.0, 0, {{2, 1, 1, 3}}});
  const auto trace = schedule_divisible(
      instance,
      fake_divisible_lp(instance, {{{1, 1, 1}, 1.0}, {{2, 1, 1}, 2.0}}));
  CHECK(trace.flow_completion.at({1, 1, 1}) == 2);
  CHECK(trace.flow_completion.at({2, 1, 1}) == 5);
}

TEST_CASE("schedule_divisible runs disjoint links concurrently") {
  CoflowInstance instance;
  instance.network = {1, 2};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 2}}});
  instance.coflows.push_back({2, 1.0, 0, {{2, 2, 2, 3}}});
  const auto trace = schedule_divisible(
      instance,
      fake_divisible_lp(instance, {{{1, 1, 1}, 1.0}, {{2, 2, 2}, 2.0}}));
  CHECK(trace.flow_completion.at({1, 1, 1}) == 2);
  CHECK(trace.flow_completion.at({2, 2, 2}) == 3);
}

TEST_CASE("assign_coflows spreads identical coflows") {
  CoflowInstance instance;
  instance.network = {2, 2};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 2, 3}}});
  instance.coflows.push_back({2, 1.0, 0, {{2, 1, 2, 3}}});
  const auto assignment =
      assign_coflows(instance, fake_indivisible_lp({{1, 1.0}, {2, 2.0}}));
  CHECK(assignment.core_of_coflow.at(1) == 1);
  CHECK(assignment.core_of_coflow.at(2) == 2);
}

TEST_CASE("assign_coflows uses the min-max port objective") {
  CoflowInstance instance;
  instance.network = {2, 2};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 2, 5}}});
  instance.coflows.push_back({2, 1.0, 0, {{2, 1, 1, 2}, {2, 2, 2, 2}}});
  const auto assignment =
      assign_coflows(instance, fake_indivisible_lp({{1, 1.0}, {2, 2.0}}));
  CHECK(assignment.core_of_coflow.at(1) == 1);
  // joining core 1 scores max(5+2, 2) + max(2, 5+2) = 14; core 2 scores 4
  CHECK(assignment.core_of_coflow.at(2) == 2);
}

TEST_CASE("schedule_indivisible shares one input port sequentially") {
  CoflowInstance instance;
  instance.network = {1, 2};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 2}, {1, 1, 2, 3}}});
  const auto trace =
      schedule_indivisible(instance, fake_indivisible_lp({{1, 5.0}}));
  CHECK(trace.flow_completion.at({1, 1, 1}) == 2);
  CHECK(trace.flow_completion.at({1, 1, 2}) == 5);
  CHECK(trace.coflow_completion.at(1) == 5);
}

TEST_CASE("schedule_indivisible respects coflow priority") {
  CoflowInstance instance;
  instance.network = {1, 1};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 1}}});
  instance.coflows.push_back({2, 1.0, 0, {{2, 1, 1, 1}}});
  const auto trace =
      schedule_indivisible(instance, fake_indivisible_lp({{1, 1.0}, {2, 2.0}}));
  CHECK(trace.coflow_completion.at(1) == 1);
  CHECK(trace.coflow_completion.at(2) == 2);
}

TEST_CASE("a late higher-priority coflow preempts") {
  CoflowInstance instance;
  instance.network = {1, 1};
  instance.coflows.push_back({1, 1.0, 3, {{1, 1, 1, 1}}});
  instance.coflows.push_back({2, 1.0, 0, {{2, 1, 1, 5}}});
  const auto trace =
      schedule_indivisible(instance, fake_indivisible_lp({{1, 4.0}, {2, 9.0}}));
  CHECK(trace.coflow_completion.at(1) == 4);
  CHECK(trace.coflow_completion.at(2) == 6);
}

TEST_CASE("weighted-total-size baseline runs the smaller coflow first") {
  CoflowInstance instance;
  instance.network = {1, 1};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 3}}});
  instance.coflows.push_back({2, 1.0, 0, {{2, 1, 1, 2}}});
  const auto trace =
      schedule_baseline(instance, OrderingPolicy::WeightedTotalSize);
  CHECK(trace.coflow_completion.at(2) == 2);
  CHECK(trace.coflow_completion.at(1) == 5);
  CHECK(trace.objective == doctest::Approx(7.0));
}

TEST_CASE("random baseline is reproducible per seed") {
  const GeneratorParams params{.seed = 21, .ports = 3, .cores = 2,
                               .num_coflows = 4, .flow_density = 0.5,
                               .max_size = 4, .max_release = 2, .max_weight = 2};
  const CoflowInstance instance = generate(params);
  const auto a = schedule_baseline(instance, OrderingPolicy::Random, 42);
  const auto b = schedule_baseline(instance, OrderingPolicy::Random, 42);
  CHECK(a.objective == b.objective);
  CHECK(a.coflow_completion == b.coflow_completion);
}

TEST_CASE("baselines never beat the LP lower bound") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GeneratorParams params{.seed = seed, .ports = 3, .cores = 2,
                                 .num_coflows = 4, .flow_density = 0.5,
                                 .max_size = 4, .max_release = 3, .max_weight = 3};
    const CoflowInstance instance = generate(params);
    const auto lp = solve_indivisible_lp(instance);
    for (auto policy : {OrderingPolicy::Random, OrderingPolicy::WeightedTotalSize,
                        OrderingPolicy::ReleaseOrder}) {
      const auto trace = schedule_baseline(instance, policy, seed);
      CHECK(trace.objective >= lp.objective - 1e-6);
    }
  }
}

TEST_CASE("end-to-end bounds, feasibility and indivisibility") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const GeneratorParams params{.seed = seed, .ports = 3,
                                 .cores = 1 + static_cast<int>(seed % 3),
                                 .num_coflows = 4, .flow_density = 0.5,
                                 .max_size = 5, .max_release = 6, .max_weight = 3};
    const CoflowInstance instance = generate(params);

    const auto div_lp = solve_divisible_lp(instance);
    const auto div_trace = schedule_divisible(instance, div_lp);
    CHECK(verify_trace(div_trace, instance).ok());
    CHECK(audit_bounds(instance, div_lp, div_trace).satisfied);
    CHECK(div_trace.objective >= div_lp.objective - 1e-6);

    const auto ind_lp = solve_indivisible_lp(instance);
    const auto ind_trace = schedule_indivisible(instance, ind_lp);
    CHECK(verify_trace(ind_trace, instance).ok());
    CHECK(audit_bounds(instance, ind_lp, ind_trace).satisfied);
    CHECK(ind_trace.objective >= ind_lp.objective - 1e-6);

    // whole coflows stay on one core
    std::map<int, std::set<int>> cores_of_coflow;
    for (const TransmissionInterval& iv : ind_trace.intervals)
      cores_of_coflow[iv.flow.coflow_id].insert(iv.core);
    for (const auto& [id, cores] : cores_of_coflow) CHECK(cores.size() == 1);
  }
}
