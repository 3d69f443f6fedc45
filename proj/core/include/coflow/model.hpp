#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace coflow {

// Identical parallel network: m non-blocking NxN switches. Port indices
// are 1-based everywhere, matching the on-disk instance format.
struct NetworkConfig {
  int cores = 1;  // m
  int ports = 1;  // N
};

struct Flow {
  int coflow_id = 0;
  int input = 0;   // 1..N
  int output = 0;  // 1..N
  std::int64_t size = 0;  // integer data units, > 0
};

struct Coflow {
  int id = 0;
  double weight = 1.0;
  std::int64_t release = 0;
  std::vector<Flow> flows;

  std::int64_t total_size() const;
};

struct CoflowInstance {
  NetworkConfig network;
  std::vector<Coflow> coflows;

  int num_flows() const;
  const Coflow* find_coflow(int id) const;
};

// Per-coflow port loads: L_ik (input side) and L_jk (output side).
struct PortLoads {
  // input_load[{k, i}] = sum of sizes of coflow k's flows entering port i.
  std::map<std::pair<int, int>, std::int64_t> input_load;
  std::map<std::pair<int, int>, std::int64_t> output_load;

  std::int64_t input(int coflow_id, int port) const;
  std::int64_t output(int coflow_id, int port) const;
};

PortLoads compute_port_loads(const CoflowInstance& instance);

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationResult validate_instance(const CoflowInstance& instance);

}  // namespace coflow
