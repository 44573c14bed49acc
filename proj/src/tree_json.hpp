#pragma once

#include <json.hpp>

#include "eqrank/hierarchy.hpp"

namespace eqrank::detail {

nlohmann::json tree_to_json(const ClusterTree& tree);
/// Throws FormatError on any structural problem.
ClusterTree tree_from_json(const nlohmann::json& doc);

}  // namespace eqrank::detail
