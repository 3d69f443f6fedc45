#include <random>

#include "doctest.h"

#include "coflow/io.hpp"
#include "coflow/oracles.hpp"
#include "coflow/relaxations.hpp"
#include "coflow/sched_divisible.hpp"
#include "coflow/sched_indivisible.hpp"

using namespace coflow;

TEST_CASE("brute force separation on the two-item port") {
  const auto witness = brute_force_separation({{1, 1, 0.5}, {2, 2, 1.0}}, 1);
  CHECK(witness.max_violation == doctest::Approx(4.5));
  CHECK(witness.witness_ids == std::vector<int>{1, 2});
}

TEST_CASE("brute force separation reports non-positive max when satisfied") {
  const auto witness = brute_force_separation({{1, 1, 10.0}, {2, 1, 11.0}}, 1);
  CHECK(witness.max_violation <= 0.0);
}

TEST_CASE("brute force separation rejects oversized ports") {
  std::vector<PortItem> items(21, PortItem{0, 1, 1.0});
  CHECK_THROWS(brute_force_separation(items, 1));
}

TEST_CASE("exact optimum of a single flow") {
  CoflowInstance instance;
  instance.network = {1, 1};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 2}}});
  for (auto mode : {ScheduleMode::Divisible, ScheduleMode::Indivisible}) {
    const auto result = exact_opt_tiny(instance, mode);
    CHECK(result.objective == doctest::Approx(2.0));
    CHECK(verify_trace(result.trace, instance).ok());
  }
}

TEST_CASE("exact optimum runs the heavy coflow first") {
  CoflowInstance instance;
  instance.network = {1, 1};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 1}}});
  instance.coflows.push_back({2, 10.0, 0, {{2, 1, 1, 1}}});
  // heavy first: 10*1 + 1*2 = 12, the other order costs 21
  CHECK(exact_opt_tiny(instance, ScheduleMode::Divisible).objective ==
        doctest::Approx(12.0));
}

TEST_CASE("a second core halves the contended optimum") {
  CoflowInstance base;
  base.network = {1, 1};
  base.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 1}}});
  base.coflows.push_back({2, 1.0, 0, {{2, 1, 1, 1}}});
  CHECK(exact_opt_tiny(base, ScheduleMode::Divisible).objective ==
        doctest::Approx(3.0));
  CoflowInstance two_cores = base;
  two_cores.network.cores = 2;
  CHECK(exact_opt_tiny(two_cores, ScheduleMode::Divisible).objective ==
        doctest::Approx(2.0));
}

TEST_CASE("exact_opt_tiny enforces its caps") {
  CoflowInstance instance;
  instance.network = {1, 1};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 13}}});
  CHECK_THROWS(exact_opt_tiny(instance, ScheduleMode::Divisible));
}

TEST_CASE("LP <= exact optimum <= scheduler objective") {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 8 && seed < 60; ++seed) {
    const GeneratorParams params{.seed = seed, .ports = 2, .cores = 2,
                                 .num_coflows = 2, .flow_density = 0.5,
                                 .max_size = 3, .max_release = 2, .max_weight = 2};
    const CoflowInstance instance = generate(params);
    std::int64_t total = 0;
    int flows = 0;
    for (const Coflow& k : instance.coflows) {
      total += k.total_size();
      flows += static_cast<int>(k.flows.size());
    }
    if (total > 12 || flows > 6) continue;
    ++checked;

    const auto div_lp = solve_divisible_lp(instance);
    const auto div_opt = exact_opt_tiny(instance, ScheduleMode::Divisible);
    const auto div_trace = schedule_divisible(instance, div_lp);
    CHECK(div_lp.objective <= div_opt.objective + 1e-6);
    CHECK(div_opt.objective <= div_trace.objective + 1e-6);

    const auto ind_lp = solve_indivisible_lp(instance);
    const auto ind_opt = exact_opt_tiny(instance, ScheduleMode::Indivisible);
    const auto ind_trace = schedule_indivisible(instance, ind_lp);
    CHECK(ind_lp.objective <= ind_opt.objective + 1e-6);
    CHECK(ind_opt.objective <= ind_trace.objective + 1e-6);

    // relaxing indivisibility can only help
    CHECK(div_opt.objective <= ind_opt.objective + 1e-6);
  }
  CHECK(checked == 8);
}

TEST_CASE("audit_bounds on a single-flow instance") {
  CoflowInstance instance;
  instance.network = {2, 1};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 4}}});
  const auto lp = solve_divisible_lp(instance);
  const auto trace = schedule_divisible(instance, lp);
  const RatioReport report = audit_bounds(instance, lp, trace);
  CHECK(report.max_ratio == doctest::Approx(1.0));
  CHECK(report.bound == doctest::Approx(4.0));  // 5 - 2/2, no releases
  CHECK(report.satisfied);
}

TEST_CASE("audit_bounds selects the bound by mode and releases") {
  CoflowInstance instance;
  instance.network = {1, 1};
  instance.coflows.push_back({1, 1.0, 0, {{1, 1, 1, 2}}});

  const auto ind_lp = solve_indivisible_lp(instance);
  const auto ind_trace = schedule_indivisible(instance, ind_lp);
  CHECK(audit_bounds(instance, ind_lp, ind_trace).bound == doctest::Approx(4.0));

  instance.coflows[0].release = 1;
  const auto rel_lp = solve_indivisible_lp(instance);
  const auto rel_trace = schedule_indivisible(instance, rel_lp);
  CHECK(audit_bounds(instance, rel_lp, rel_trace).bound == doctest::Approx(5.0));
}

TEST_CASE("divisible bound with two cores is 5") {
  const GeneratorParams params{.seed = 4, .ports = 3, .cores = 2,
                               .num_coflows = 3, .flow_density = 0.5,
                               .max_size = 4, .max_release = 3, .max_weight = 2};
  const CoflowInstance instance = generate(params);
  const auto lp = solve_divisible_lp(instance);
  const auto trace = schedule_divisible(instance, lp);
  const RatioReport report = audit_bounds(instance, lp, trace);
  const bool released = [&instance] {
    for (const Coflow& k : instance.coflows)
      if (k.release > 0) return true;
    return false;
  }();
  CHECK(report.bound == doctest::Approx(released ? 5.0 : 4.0));
  CHECK(report.max_ratio <= 5.0 + 1e-9);
}
