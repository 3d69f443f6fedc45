#include "doctest.h"

#include "coflow/io.hpp"
#include "coflow/relaxations.hpp"
#include "coflow/sched_divisible.hpp"

using namespace coflow;

TEST_CASE("instance files round-trip") {
  const GeneratorParams params{.seed = 13, .ports = 3, .cores = 2,
                               .num_coflows = 3, .flow_density = 0.6,
                               .max_size = 5, .max_release = 4, .max_weight = 3};
  const CoflowInstance instance = generate(params);
  const std::string text = serialize_instance(instance);
  CHECK(serialize_instance(parse_instance(text)) == text);
}

TEST_CASE("parse rejects corrupt and invalid input") {
  CHECK_THROWS(parse_instance("not json"));
  CHECK_THROWS(parse_instance("{\"network\":{\"cores\":1,\"ports\":1}}"));
  // valid JSON, out-of-range port
  CHECK_THROWS(parse_instance(R"({"schema_version":1,
    "network":{"cores":1,"ports":1},
    "coflows":[{"id":1,"weight":1,"release":0,
                "flows":[{"input":2,"output":1,"size":1}]}]})"));
}

TEST_CASE("generator is deterministic per seed") {
  const GeneratorParams params{.seed = 99, .ports = 4, .cores = 2,
                               .num_coflows = 4, .flow_density = 0.4,
                               .max_size = 5, .max_release = 6, .max_weight = 4};
  CHECK(serialize_instance(generate(params)) ==
        serialize_instance(generate(params)));
}

TEST_CASE("density one fills every link") {
  const GeneratorParams params{.seed = 2, .ports = 2, .cores = 1,
                               .num_coflows = 3, .flow_density = 1.0,
                               .max_size = 3, .max_release = 0, .max_weight = 1};
  const CoflowInstance instance = generate(params);
  for (const Coflow& k : instance.coflows) CHECK(k.flows.size() == 4);
}

TEST_CASE("max_release zero keeps all releases at zero") {
  const GeneratorParams params{.seed = 8, .ports = 3, .cores = 2,
                               .num_coflows = 5, .flow_density = 0.5,
                               .max_size = 5, .max_release = 0, .max_weight = 2};
  for (const Coflow& k : generate(params).coflows) CHECK(k.release == 0);
}

TEST_CASE("generated sizes and weights stay in range") {
  const GeneratorParams params{.seed = 31, .ports = 3, .cores = 1,
                               .num_coflows = 5, .flow_density = 0.5,
                               .max_size = 4, .max_release = 3, .max_weight = 3};
  for (const Coflow& k : generate(params).coflows) {
    CHECK(k.weight >= 1.0);
    CHECK(k.weight <= 3.0);
    CHECK(k.release >= 0);
    CHECK(k.release <= 3);
    CHECK(!k.flows.empty());
    for (const Flow& f : k.flows) {
      CHECK(f.size >= 1);
      CHECK(f.size <= 4);
    }
  }
}

TEST_CASE("trace files round-trip through parse") {
  const GeneratorParams params{.seed = 5, .ports = 2, .cores = 2,
                               .num_coflows = 2, .flow_density = 0.7,
                               .max_size = 3, .max_release = 2, .max_weight = 2};
  const CoflowInstance instance = generate(params);
  const auto lp = solve_divisible_lp(instance);
  const auto trace = schedule_divisible(instance, lp);
  const std::string text = serialize_trace(trace);
  const ScheduleTrace parsed = parse_trace(text, instance);
  CHECK(serialize_trace(parsed) == text);
  CHECK(parsed.objective == doctest::Approx(trace.objective));
}

TEST_CASE("ratio curves match their closed forms") {
  const auto rows = emit_ratio_curves({1, 2, 5});
  CHECK(rows[0].divisible_release == doctest::Approx(4.0));
  CHECK(rows[0].divisible_no_release == doctest::Approx(3.0));
  CHECK(rows[0].indivisible_release == doctest::Approx(5.0));
  CHECK(rows[0].indivisible_no_release == doctest::Approx(4.0));
  CHECK(rows[0].composed_release == doctest::Approx(5.0));
  CHECK(rows[0].composed_no_release == doctest::Approx(4.0));
  CHECK(rows[1].divisible_release == doctest::Approx(5.0));
  CHECK(rows[2].divisible_release == doctest::Approx(5.6));
  CHECK_THROWS(emit_ratio_curves({}));
}

TEST_CASE("the divisible with-release curve approaches 6") {
  const auto rows = emit_ratio_curves({1000});
  CHECK(rows[0].divisible_release == doctest::Approx(5.998));
}

TEST_CASE("curve serialization is a header plus one row per m") {
  const std::string text = serialize_ratio_curves(emit_ratio_curves({1, 5}));
  CHECK(text ==
        "m,divisible_release,divisible_no_release,indivisible_release,"
        "indivisible_no_release,composed_release,composed_no_release\n"
        "1,4,3,5,4,5,4\n"
        "5,5.6,4.6,21,20,25,20\n");
}
