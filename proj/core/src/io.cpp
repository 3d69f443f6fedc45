#include "coflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace coflow {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

std::string serialize_instance(const CoflowInstance& instance) {
  ordered_json j;
  j["schema_version"] = kInstanceSchemaVersion;
  j["network"] = {{"cores", instance.network.cores},
                  {"ports", instance.network.ports}};
  j["coflows"] = ordered_json::array();
  for (const Coflow& k : instance.coflows) {
    ordered_json jk;
    jk["id"] = k.id;
    jk["weight"] = k.weight;
    jk["release"] = k.release;
    jk["flows"] = ordered_json::array();
    for (const Flow& f : k.flows)
      jk["flows"].push_back(
          {{"input", f.input}, {"output", f.output}, {"size", f.size}});
    j["coflows"].push_back(std::move(jk));
  }
  return j.dump(2) + "\n";
}

CoflowInstance parse_instance(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("schema_version") ||
      j["schema_version"].get<int>() != kInstanceSchemaVersion)
    throw std::runtime_error("unsupported or missing schema_version");

  CoflowInstance instance;
  instance.network.cores = j.at("network").at("cores").get<int>();
  instance.network.ports = j.at("network").at("ports").get<int>();
  for (const json& jk : j.at("coflows")) {
    Coflow k;
    k.id = jk.at("id").get<int>();
    k.weight = jk.at("weight").get<double>();
    k.release = jk.at("release").get<std::int64_t>();
    for (const json& jf : jk.at("flows")) {
      Flow f;
      f.coflow_id = k.id;
      f.input = jf.at("input").get<int>();
      f.output = jf.at("output").get<int>();
      f.size = jf.at("size").get<std::int64_t>();
      k.flows.push_back(f);
    }
    instance.coflows.push_back(std::move(k));
  }

  const ValidationResult validation = validate_instance(instance);
  if (!validation.ok()) {
    std::string msg = "invalid instance:";
    for (const std::string& v : validation.violations) msg += "\n  " + v;
    throw std::runtime_error(msg);
  }
  return instance;
}

CoflowInstance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

void save_instance(const CoflowInstance& instance, const std::string& path) {
  write_file(path, serialize_instance(instance));
}

CoflowInstance generate(const GeneratorParams& params) {
  if (params.ports < 1 || params.cores < 1 || params.num_coflows < 1 ||
      params.flow_density <= 0.0 || params.flow_density > 1.0 ||
      params.max_size < 1 || params.max_release < 0 || params.max_weight < 1)
    throw std::invalid_argument("invalid generator parameters");

  std::mt19937_64 rng(params.seed);
  auto draw_int = [&rng](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto draw_unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  CoflowInstance instance;
  instance.network = {params.cores, params.ports};
  for (int id = 1; id <= params.num_coflows; ++id) {
    Coflow k;
    k.id = id;
    k.weight = static_cast<double>(draw_int(1, params.max_weight));
    k.release = draw_int(0, params.max_release);
    while (k.flows.empty()) {  // zero-flow coflows are re-drawn
      for (int i = 1; i <= params.ports; ++i)
        for (int j = 1; j <= params.ports; ++j)
          if (draw_unit() < params.flow_density)
            k.flows.push_back({id, i, j, draw_int(1, params.max_size)});
    }
    instance.coflows.push_back(std::move(k));
  }
  return instance;
}

std::string serialize_divisible_solution(const DivisibleLpSolution& sol) {
  ordered_json j;
  j["mode"] = "divisible";
  j["objective"] = sol.objective;
  j["rounds"] = sol.rounds;
  j["certified"] = sol.certified;
  j["coflow_completion"] = ordered_json::object();
  for (const auto& [id, c] : sol.coflow_completion)
    j["coflow_completion"][std::to_string(id)] = c;
  j["flow_completion"] = ordered_json::array();
  for (const auto& [key, c] : sol.flow_completion)
    j["flow_completion"].push_back({{"coflow", key.coflow_id},
                                    {"input", key.input},
                                    {"output", key.output},
                                    {"value", c}});
  return j.dump(2) + "\n";
}

std::string serialize_indivisible_solution(const IndivisibleLpSolution& sol) {
  ordered_json j;
  j["mode"] = "indivisible";
  j["objective"] = sol.objective;
  j["rounds"] = sol.rounds;
  j["certified"] = sol.certified;
  j["coflow_completion"] = ordered_json::object();
  for (const auto& [id, c] : sol.coflow_completion)
    j["coflow_completion"][std::to_string(id)] = c;
  return j.dump(2) + "\n";
}

std::string serialize_trace(const ScheduleTrace& trace) {
  std::ostringstream out;
  out << "core,coflow_id,input,output,start,end\n";
  for (const TransmissionInterval& iv : trace.intervals)
    out << iv.core << ',' << iv.flow.coflow_id << ',' << iv.flow.input << ','
        << iv.flow.output << ',' << iv.start << ',' << iv.end << '\n';
  return out.str();
}

ScheduleTrace parse_trace(const std::string& text, const CoflowInstance& instance) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "core,coflow_id,input,output,start,end")
    throw std::runtime_error("bad trace header");

  std::vector<std::vector<TransmissionInterval>> partials(1);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TransmissionInterval iv;
    std::istringstream row(line);
    char comma;
    if (!(row >> iv.core >> comma >> iv.flow.coflow_id >> comma >>
          iv.flow.input >> comma >> iv.flow.output >> comma >> iv.start >>
          comma >> iv.end))
      throw std::runtime_error("bad trace row: " + line);
    partials[0].push_back(iv);
  }
  return merge_traces(partials, instance);
}

std::string serialize_report(const ScheduleTrace& trace, double lp_objective,
                             int lp_rounds, bool lp_certified,
                             const RatioReport& ratios,
                             const FeasibilityReport& feasibility) {
  ordered_json j;
  j["mode"] = ratios.mode == ScheduleMode::Divisible ? "divisible" : "indivisible";
  j["objective"] = trace.objective;
  j["lp_objective"] = lp_objective;
  j["lp_rounds"] = lp_rounds;
  j["lp_certified"] = lp_certified;
  j["with_release"] = ratios.with_release;
  j["bound"] = ratios.bound;
  j["max_ratio"] = ratios.max_ratio;
  j["bound_satisfied"] = ratios.satisfied;
  j["feasible"] = feasibility.ok();
  j["feasibility_violations"] = feasibility.violations;
  j["coflow_ratio"] = ordered_json::object();
  for (const auto& [id, r] : ratios.coflow_ratio)
    j["coflow_ratio"][std::to_string(id)] = r;
  if (ratios.mode == ScheduleMode::Divisible) {
    j["flow_ratio"] = ordered_json::array();
    for (const auto& [key, r] : ratios.flow_ratio)
      j["flow_ratio"].push_back({{"coflow", key.coflow_id},
                                 {"input", key.input},
                                 {"output", key.output},
                                 {"ratio", r}});
  }
  return j.dump(2) + "\n";
}

std::vector<RatioCurveRow> emit_ratio_curves(const std::vector<int>& m_range) {
  if (m_range.empty()) throw std::invalid_argument("empty m range");
  std::vector<RatioCurveRow> rows;
  for (int m : m_range) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    const double md = static_cast<double>(m);
    RatioCurveRow row;
    row.cores = m;
    row.divisible_release = 6.0 - 2.0 / md;
    row.divisible_no_release = 5.0 - 2.0 / md;
    row.indivisible_release = 4.0 * md + 1.0;
    row.indivisible_no_release = 4.0 * md;
    row.composed_release = 5.0 * md;
    row.composed_no_release = 4.0 * md;
    rows.push_back(row);
  }
  return rows;
}

std::string serialize_ratio_curves(const std::vector<RatioCurveRow>& rows) {
  std::ostringstream out;
  out << "m,divisible_release,divisible_no_release,indivisible_release,"
         "indivisible_no_release,composed_release,composed_no_release\n";
  for (const RatioCurveRow& r : rows)
    out << r.cores << ',' << format_double(r.divisible_release) << ','
        << format_double(r.divisible_no_release) << ','
        << format_double(r.indivisible_release) << ','
        << format_double(r.indivisible_no_release) << ','
        << format_double(r.composed_release) << ','
        << format_double(r.composed_no_release) << '\n';
  return out.str();
}

}  // namespace coflow
