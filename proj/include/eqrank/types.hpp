#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace eqrank {

/// Dense internal vertex index, 0..n-1.
using VertexId = std::uint32_t;
/// Position of an edge in the CSR arrays.
using EdgeIndex = std::uint64_t;
/// Co-citation count carried by one edge.
using Weight = std::uint32_t;
/// Dense theme index within one hierarchy level.
using ThemeIndex = std::uint32_t;

/// Names one theme of the cluster tree. Levels start at 1; level 1 partitions the papers.
struct ThemeId {
  std::uint32_t level = 0;
  ThemeIndex index = 0;

  friend auto operator<=>(const ThemeId&, const ThemeId&) = default;
};

inline std::string to_string(const ThemeId& t) {
  return std::to_string(t.level) + ":" + std::to_string(t.index);
}

}  // namespace eqrank
