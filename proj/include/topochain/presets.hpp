#pragma once

#include <string>
#include <vector>

#include "topochain/config.hpp"

namespace topochain {

/// Ids accepted by reproduce(), one per figure.
std::vector<std::string> preset_ids();

/// Bundled configs for a figure id, in canonical form (to_json of the parsed
/// config gives the same document back). Throws InvalidParameter listing the
/// known ids for anything else.
std::vector<json> preset_configs(const std::string& id);

}  // namespace topochain
