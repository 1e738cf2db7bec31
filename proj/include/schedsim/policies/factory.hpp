#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "schedsim/config.hpp"
#include "schedsim/policy.hpp"

namespace schedsim {

// Names accepted by make_policy, in canonical order.
const std::vector<std::string>& policy_names();

// Builds a fresh policy instance; nullptr for an unknown name.
std::unique_ptr<Policy> make_policy(std::string_view name, const SimConfig& cfg);

}  // namespace schedsim
