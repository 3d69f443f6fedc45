#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coflow/model.hpp"
#include "coflow/oracles.hpp"
#include "coflow/relaxations.hpp"
#include "coflow/simulator.hpp"

namespace coflow {

// Instance files are JSON with an explicit schema_version; ports are
// 1-based on disk, same as in memory.
inline constexpr int kInstanceSchemaVersion = 1;

std::string serialize_instance(const CoflowInstance& instance);
CoflowInstance parse_instance(const std::string& text);
CoflowInstance load_instance(const std::string& path);
void save_instance(const CoflowInstance& instance, const std::string& path);

struct GeneratorParams {
  std::uint64_t seed = 1;
  int ports = 2;
  int cores = 1;
  int num_coflows = 2;
  double flow_density = 0.5;  // per-link inclusion probability, (0, 1]
  std::int64_t max_size = 5;
  std::int64_t max_release = 0;
  std::int64_t max_weight = 1;
};

CoflowInstance generate(const GeneratorParams& params);

std::string serialize_divisible_solution(const DivisibleLpSolution& sol);
std::string serialize_indivisible_solution(const IndivisibleLpSolution& sol);

// rows: core,coflow_id,input,output,start,end
std::string serialize_trace(const ScheduleTrace& trace);
ScheduleTrace parse_trace(const std::string& text, const CoflowInstance& instance);

std::string serialize_report(const ScheduleTrace& trace, double lp_objective,
                             int lp_rounds, bool lp_certified,
                             const RatioReport& ratios,
                             const FeasibilityReport& feasibility);

// Closed-form ratio curves per core count: proposed divisible with/without
// release, proposed indivisible with/without release, and the composed
// single-coflow-distribution baseline (5m with release, 4m without).
struct RatioCurveRow {
  int cores = 0;
  double divisible_release = 0.0;     // 6 - 2/m
  double divisible_no_release = 0.0;  // 5 - 2/m
  double indivisible_release = 0.0;   // 4m + 1
  double indivisible_no_release = 0.0;  // 4m
  double composed_release = 0.0;      // 5m
  double composed_no_release = 0.0;   // 4m
};

std::vector<RatioCurveRow> emit_ratio_curves(const std::vector<int>& m_range);
std::string serialize_ratio_curves(const std::vector<RatioCurveRow>& rows);

}  // namespace coflow
