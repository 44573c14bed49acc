#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eqrank/cocitation.hpp"
#include "eqrank/graph.hpp"
#include "eqrank/types.hpp"

namespace eqrank {

/// Local authority: the out-neighbour reached by the heaviest reference (ties: smallest id).
/// Vertices without references map to themselves.
std::vector<VertexId> local_authority_map(const WeightedGraph& wg);

/// Local hub: the citer whose citation carries the largest weight (ties: smallest id).
/// Vertices that are never cited map to themselves.
std::vector<VertexId> local_hub_map(const WeightedGraph& wg);

/**
 * Resolves every vertex of a functional graph to its root.
 *
 * Following `next` from p eventually enters a terminal cycle; the root is that cycle's
 * smallest vertex (a fixed point is its own root). Parallel pointer doubling, O(n log n)
 * work and O(log n) rounds.
 */
std::vector<VertexId> resolve_roots(std::span<const VertexId> next);

namespace serial {
std::vector<VertexId> local_authority_map(const WeightedGraph& wg);
std::vector<VertexId> local_hub_map(const WeightedGraph& wg);
/// Iterative colouring walk, O(n).
std::vector<VertexId> resolve_roots(std::span<const VertexId> next);
}  // namespace serial

struct ThemeRoots {
  VertexId root_authority = 0;
  VertexId root_hub = 0;

  friend bool operator==(const ThemeRoots&, const ThemeRoots&) = default;
};

/**
 * Partition of a level's units into themes.
 *
 * Theme indices are dense and assigned in order of each theme's first (smallest) member.
 * Member lists are stored CSR-style and are strictly increasing.
 */
class Partition {
 public:
  Partition() : member_offsets_(1, 0) {}
  Partition(std::vector<ThemeIndex> theme_of, std::vector<ThemeRoots> roots);

  std::size_t unit_count() const noexcept { return theme_of_.size(); }
  std::size_t theme_count() const noexcept { return roots_.size(); }

  ThemeIndex theme_of(VertexId v) const { return theme_of_[v]; }
  std::span<const ThemeIndex> theme_of() const noexcept { return theme_of_; }
  const ThemeRoots& roots(ThemeIndex t) const { return roots_[t]; }
  std::span<const ThemeRoots> roots() const noexcept { return roots_; }
  std::span<const VertexId> members(ThemeIndex t) const {
    return {members_.data() + member_offsets_[t], members_.data() + member_offsets_[t + 1]};
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.theme_of_ == b.theme_of_ && a.roots_ == b.roots_;
  }

 private:
  std::vector<ThemeIndex> theme_of_;
  std::vector<ThemeRoots> roots_;
  std::vector<std::uint64_t> member_offsets_;
  std::vector<VertexId> members_;
};

/// Groups units by their (root authority, root hub) pair.
Partition theme_partition(std::span<const VertexId> root_authority,
                          std::span<const VertexId> root_hub);

struct LevelResult {
  std::vector<VertexId> local_authority;
  std::vector<VertexId> local_hub;
  std::vector<VertexId> root_authority;
  std::vector<VertexId> root_hub;
  Partition partition;
  /// Vertices whose local authority / hub was chosen over zero-weight edges only.
  std::uint64_t zero_weight_authority_picks = 0;
  std::uint64_t zero_weight_hub_picks = 0;
};

/// One clustering pass: co-citation weights, local maps, roots, theme partition.
LevelResult eqrank_level(const CitationGraph& g);
LevelResult eqrank_level(const WeightedGraph& wg);

}  // namespace eqrank
