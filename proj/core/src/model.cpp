#include "coflow/model.hpp"

#include <set>
#include <sstream>

namespace coflow {

std::int64_t Coflow::total_size() const {
  std::int64_t total = 0;
  for (const Flow& f : flows) total += f.size;
  return total;
}

int CoflowInstance::num_flows() const {
  int n = 0;
  for (const Coflow& k : coflows) n += static_cast<int>(k.flows.size());
  return n;
}

const Coflow* CoflowInstance::find_coflow(int id) const {
  for (const Coflow& k : coflows)
    if (k.id == id) return &k;
  return nullptr;
}

std::int64_t PortLoads::input(int coflow_id, int port) const {
  auto it = input_load.find({coflow_id, port});
  return it == input_load.end() ? 0 : it->second;
}

std::int64_t PortLoads::output(int coflow_id, int port) const {
  auto it = output_load.find({coflow_id, port});
  return it == output_load.end() ? 0 : it->second;
}

PortLoads compute_port_loads(const CoflowInstance& instance) {
  PortLoads loads;
  for (const Coflow& k : instance.coflows) {
    for (const Flow& f : k.flows) {
      loads.input_load[{k.id, f.input}] += f.size;
      loads.output_load[{k.id, f.output}] += f.size;
    }
  }
  return loads;
}

ValidationResult validate_instance(const CoflowInstance& instance) {
  ValidationResult result;
  auto add = [&result](const std::string& msg) { result.violations.push_back(msg); };

  if (instance.network.cores < 1) add("network cores must be >= 1");
  if (instance.network.ports < 1) add("network ports must be >= 1");
  const int n = instance.network.ports;

  std::set<int> seen_ids;
  for (const Coflow& k : instance.coflows) {
    std::ostringstream prefix;
    prefix << "coflow " << k.id << ": ";
    if (!seen_ids.insert(k.id).second) add(prefix.str() + "duplicate coflow id");
    if (k.weight <= 0) add(prefix.str() + "non-positive weight");
    if (k.release < 0) add(prefix.str() + "negative release time");
    if (k.flows.empty()) add(prefix.str() + "no flows");

    std::set<std::pair<int, int>> links;
    for (const Flow& f : k.flows) {
      std::ostringstream fp;
      fp << prefix.str() << "flow (" << f.input << "," << f.output << "): ";
      if (f.input < 1 || f.input > n || f.output < 1 || f.output > n)
        add(fp.str() + "port out of range");
      if (f.size < 1) add(fp.str() + "non-positive size");
      if (f.coflow_id != k.id) add(fp.str() + "coflow_id mismatch");
      if (!links.insert({f.input, f.output}).second)
        add(fp.str() + "duplicate link entry");
    }
  }
  return result;
}

}  // namespace coflow
