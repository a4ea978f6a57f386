#pragma once

#include <string>

#include "sicnet/model.hpp"

namespace sicnet {

/// Parses a network description:
///
///   { "alpha": 4, "mu": 1e-4, "mu_j": 1e-4,
///     "tiers": [ { "lambda": 1e-5, "p_dl": 10, "q_ul": 10, "bias": 1 }, ... ] }
///
/// `p_dl`, `q_ul` and `bias` default to 1. `mu_j` may be replaced by
/// `channels` (mu_j = mu / channels); giving both is an error. Unknown keys are
/// rejected. Throws ConfigError on any schema or invariant violation.
NetworkConfig parse_network_config(const std::string& json_text);
NetworkConfig load_network_config(const std::string& path);

std::string network_config_to_json(const NetworkConfig& cfg, int indent = 2);

}  // namespace sicnet
