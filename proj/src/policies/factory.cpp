#include "schedsim/policies/factory.hpp"

#include "schedsim/policies/besteffort.hpp"
#include "schedsim/policies/classic.hpp"
#include "schedsim/policies/nmlfq.hpp"

namespace schedsim {

const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> names{"fcfs", "rr", "edf", "dasa", "lbesa", "nmlfq"};
  return names;
}

std::unique_ptr<Policy> make_policy(std::string_view name, const SimConfig& cfg) {
  if (name == "fcfs") return std::make_unique<FcfsPolicy>();
  if (name == "rr") return std::make_unique<RrPolicy>(cfg.rr);
  if (name == "edf") return std::make_unique<EdfPolicy>();
  if (name == "dasa") return std::make_unique<DasaPolicy>();
  if (name == "lbesa") return std::make_unique<LbesaPolicy>();
  if (name == "nmlfq") return std::make_unique<NmlfqPolicy>(cfg.nmlfq);
  return nullptr;
}

}  // namespace schedsim
