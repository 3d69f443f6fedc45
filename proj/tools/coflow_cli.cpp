// Command-line front end: instance generation, LP relaxations, the two
// list schedulers with feasibility and ratio audits, trace verification,
// ratio curves, and the brute-force oracles.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "coflow/io.hpp"
#include "coflow/model.hpp"
#include "coflow/oracles.hpp"
#include "coflow/relaxations.hpp"
#include "coflow/sched_divisible.hpp"
#include "coflow/sched_indivisible.hpp"
#include "coflow/simulator.hpp"

namespace {

// Exit codes: 0 ok, 1 usage/parse, 2 feasibility-audit failure,
// 3 bound-audit failure, 4 LP round limit without certification.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBoundViolated = 3;
constexpr int kExitUncertified = 4;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

coflow::ScheduleMode parse_mode(const std::string& mode) {
  if (mode == "divisible") return coflow::ScheduleMode::Divisible;
  if (mode == "indivisible") return coflow::ScheduleMode::Indivisible;
  throw CLI::ValidationError("--mode must be divisible or indivisible");
}

int run_pipeline(const std::string& instance_path, const std::string& mode_str,
                 const std::string& policy, std::uint64_t seed,
                 const coflow::RelaxationOptions& opts,
                 const std::optional<std::string>& out_dir) {
  const coflow::CoflowInstance instance = coflow::load_instance(instance_path);
  const coflow::ScheduleMode mode = parse_mode(mode_str);

  coflow::ScheduleTrace trace;
  coflow::RatioReport ratios;
  double lp_objective = 0.0;
  int lp_rounds = 0;
  bool lp_certified = true;
  std::string solution_text;

  if (mode == coflow::ScheduleMode::Divisible) {
    if (policy != "lp")
      throw CLI::ValidationError("--policy applies to indivisible mode only");
    const auto lp = coflow::solve_divisible_lp(instance, opts);
    trace = coflow::schedule_divisible(instance, lp);
    ratios = coflow::audit_bounds(instance, lp, trace);
    lp_objective = lp.objective;
    lp_rounds = lp.rounds;
    lp_certified = lp.certified;
    solution_text = coflow::serialize_divisible_solution(lp);
  } else {
    const auto lp = coflow::solve_indivisible_lp(instance, opts);
    if (policy == "lp") {
      trace = coflow::schedule_indivisible(instance, lp);
    } else {
      coflow::OrderingPolicy p;
      if (policy == "random")
        p = coflow::OrderingPolicy::Random;
      else if (policy == "wtsize")
        p = coflow::OrderingPolicy::WeightedTotalSize;
      else if (policy == "release")
        p = coflow::OrderingPolicy::ReleaseOrder;
      else
        throw CLI::ValidationError("unknown policy: " + policy);
      trace = coflow::schedule_baseline(instance, p, seed);
    }
    ratios = coflow::audit_bounds(instance, lp, trace);
    lp_objective = lp.objective;
    lp_rounds = lp.rounds;
    lp_certified = lp.certified;
    solution_text = coflow::serialize_indivisible_solution(lp);
  }

  const coflow::FeasibilityReport feasibility =
      coflow::verify_trace(trace, instance);
  const std::string report = coflow::serialize_report(
      trace, lp_objective, lp_rounds, lp_certified, ratios, feasibility);

  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    write_text(*out_dir + "/solution.json", solution_text);
    write_text(*out_dir + "/trace.csv", coflow::serialize_trace(trace));
    write_text(*out_dir + "/report.json", report);
  }
  std::cout << report;

  if (!feasibility.ok()) {
    for (const std::string& v : feasibility.violations)
      std::cerr << "feasibility: " << v << "\n";
    return kExitInfeasible;
  }
  // Baseline orderings carry no approximation guarantee; only the LP order
  // is held to the paper bounds.
  if (policy == "lp" && !ratios.satisfied) return kExitBoundViolated;
  if (!lp_certified) {
    std::cerr << "warning: LP round limit reached; results not certified\n";
    return kExitUncertified;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coflow scheduling on identical parallel switch networks"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  coflow::GeneratorParams params;
  std::string gen_out;
  gen->add_option("--seed", params.seed);
  gen->add_option("--ports", params.ports);
  gen->add_option("--cores", params.cores);
  gen->add_option("--coflows", params.num_coflows);
  gen->add_option("--density", params.flow_density);
  gen->add_option("--max-size", params.max_size);
  gen->add_option("--max-release", params.max_release);
  gen->add_option("--max-weight", params.max_weight);
  gen->add_option("-o,--output", gen_out)->required();

  // shared lp/schedule flags
  std::string instance_path, mode_str = "divisible", out_path, policy = "lp";
  coflow::RelaxationOptions opts;
  std::optional<std::string> out_dir;
  std::uint64_t seed = 1;

  auto* lp_cmd = app.add_subcommand("lp", "solve the LP relaxation");
  lp_cmd->add_option("instance", instance_path)->required();
  lp_cmd->add_option("--mode", mode_str);
  lp_cmd->add_option("--eps-sep", opts.eps_sep);
  lp_cmd->add_option("--eps-feas", opts.eps_feas);
  lp_cmd->add_option("--max-rounds", opts.max_rounds);
  lp_cmd->add_option("-o,--output", out_path);

  auto* sched = app.add_subcommand(
      "schedule", "LP + list scheduling + feasibility and bound audits");
  sched->add_option("instance", instance_path)->required();
  sched->add_option("--mode", mode_str);
  sched->add_option("--policy", policy,
                    "coflow order for indivisible mode: lp|random|wtsize|release");
  sched->add_option("--seed", seed, "seed for --policy random");
  sched->add_option("--eps-sep", opts.eps_sep);
  sched->add_option("--eps-feas", opts.eps_feas);
  sched->add_option("--max-rounds", opts.max_rounds);
  std::string out_dir_value;
  auto* out_dir_opt = sched->add_option("--out-dir", out_dir_value,
                                        "write solution.json, trace.csv, report.json");

  auto* verify = app.add_subcommand("verify", "check a trace against an instance");
  std::string trace_path;
  verify->add_option("instance", instance_path)->required();
  verify->add_option("trace", trace_path)->required();

  auto* curves = app.add_subcommand("curves", "emit approximation-ratio curves");
  int m_from = 1, m_to = 10;
  curves->add_option("--m-from", m_from);
  curves->add_option("--m-to", m_to);
  curves->add_option("-o,--output", out_path);

  auto* oracle = app.add_subcommand("oracle", "brute-force references");
  auto* sep = oracle->add_subcommand(
      "separate", "compare prefix and subset separation on a port file");
  std::string port_path;
  sep->add_option("port", port_path, "JSON: {cores, items: [{id,size,completion}]}")
      ->required();
  auto* opt_cmd = oracle->add_subcommand("opt", "exact optimum for a tiny instance");
  opt_cmd->add_option("instance", instance_path)->required();
  opt_cmd->add_option("--mode", mode_str);
  oracle->require_subcommand(1);

  try {
    app.parse(argc, argv);

    if (*gen) {
      coflow::save_instance(coflow::generate(params), gen_out);
      return kExitOk;
    }
    if (*lp_cmd) {
      const coflow::CoflowInstance instance = coflow::load_instance(instance_path);
      std::string text;
      bool certified = true;
      if (parse_mode(mode_str) == coflow::ScheduleMode::Divisible) {
        const auto sol = coflow::solve_divisible_lp(instance, opts);
        text = coflow::serialize_divisible_solution(sol);
        certified = sol.certified;
      } else {
        const auto sol = coflow::solve_indivisible_lp(instance, opts);
        text = coflow::serialize_indivisible_solution(sol);
        certified = sol.certified;
      }
      if (out_path.empty())
        std::cout << text;
      else
        write_text(out_path, text);
      if (!certified) {
        std::cerr << "warning: LP round limit reached; results not certified\n";
        return kExitUncertified;
      }
      return kExitOk;
    }
    if (*sched) {
      if (!out_dir_opt->empty()) out_dir = out_dir_value;
      return run_pipeline(instance_path, mode_str, policy, seed, opts, out_dir);
    }
    if (*verify) {
      const coflow::CoflowInstance instance = coflow::load_instance(instance_path);
      const coflow::ScheduleTrace trace =
          coflow::parse_trace(read_text(trace_path), instance);
      const coflow::FeasibilityReport report = coflow::verify_trace(trace, instance);
      if (report.ok()) {
        std::cout << "feasible\n";
        return kExitOk;
      }
      for (const std::string& v : report.violations) std::cout << v << "\n";
      return kExitInfeasible;
    }
    if (*curves) {
      std::vector<int> m_range;
      for (int m = m_from; m <= m_to; ++m) m_range.push_back(m);
      const std::string text =
          coflow::serialize_ratio_curves(coflow::emit_ratio_curves(m_range));
      if (out_path.empty())
        std::cout << text;
      else
        write_text(out_path, text);
      return kExitOk;
    }
    if (*sep) {
      const nlohmann::json j = nlohmann::json::parse(read_text(port_path));
      std::vector<coflow::PortItem> items;
      for (const auto& ji : j.at("items"))
        items.push_back({ji.at("id").get<int>(), ji.at("size").get<std::int64_t>(),
                         ji.at("completion").get<double>()});
      const int cores = j.at("cores").get<int>();
      const auto cut = coflow::separate_prefix(items, cores, 0.0);
      const auto witness = coflow::brute_force_separation(items, cores);
      std::cout << "prefix_violation,"
                << (cut ? cut->violation : 0.0) << "\n"
                << "subset_violation," << witness.max_violation << "\n";
      return kExitOk;
    }
    if (*opt_cmd) {
      const coflow::CoflowInstance instance = coflow::load_instance(instance_path);
      const auto result = coflow::exact_opt_tiny(instance, parse_mode(mode_str));
      std::cout << "optimum," << result.objective << "\n";
      std::cout << coflow::serialize_trace(result.trace);
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
