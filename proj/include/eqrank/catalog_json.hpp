#pragma once

// JSON shapes shared by the catalog snapshot and the HTTP API.

#include <json.hpp>

#include <span>
#include <vector>

#include "eqrank/catalog.hpp"

namespace eqrank {

nlohmann::json to_json(const ThemeId& t);
nlohmann::json to_json(std::span<const ThemeId> path);
nlohmann::json to_json(const ThemeSummary& s);
nlohmann::json to_json(std::span<const RankedPaper> ranked);
nlohmann::json to_json(const SearchHit& hit);
nlohmann::json to_json(std::span<const SearchHit> hits);

}  // namespace eqrank
