#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eqrank/graph.hpp"
#include "eqrank/level.hpp"
#include "eqrank/types.hpp"

namespace eqrank {

/// Themes contracted to vertices. multiplicity[e] counts the original cross-theme edges
/// folded into reduced edge e (indexed like graph.out_targets()).
struct ReducedGraph {
  CitationGraph graph;
  std::vector<std::uint64_t> multiplicity;
};

/// Contracts each theme to one vertex; intra-theme edges are dropped.
ReducedGraph reduce_graph(const CitationGraph& g, const Partition& part);

namespace serial {
ReducedGraph reduce_graph(const CitationGraph& g, const Partition& part);
}

enum class TerminationCause {
  /// The last level produced as many themes as it had units.
  no_progress,
  /// A single theme remains.
  single_theme,
  /// The level cap was reached.
  max_levels,
};

std::string_view to_string(TerminationCause cause);
std::optional<TerminationCause> parse_termination_cause(std::string_view s);

struct LevelDiagnostics {
  std::uint64_t unit_count = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t zero_weight_authority_picks = 0;
  std::uint64_t zero_weight_hub_picks = 0;

  friend bool operator==(const LevelDiagnostics&, const LevelDiagnostics&) = default;
};

/// One level of the cluster tree. Level k partitions the themes of level k-1 (level 1
/// partitions the papers).
struct TreeLevel {
  Partition partition;
  /// Containing theme at the next level; empty on the top level.
  std::vector<ThemeIndex> parent;
  /// Roots descended to paper ids: the root authority paper of the root authority unit, and
  /// likewise for hubs.
  std::vector<VertexId> root_authority_paper;
  std::vector<VertexId> root_hub_paper;
  LevelDiagnostics diagnostics;

  friend bool operator==(const TreeLevel& a, const TreeLevel& b) {
    return a.partition == b.partition && a.parent == b.parent &&
           a.root_authority_paper == b.root_authority_paper &&
           a.root_hub_paper == b.root_hub_paper && a.diagnostics == b.diagnostics;
  }
};

class ClusterTree {
 public:
  ClusterTree() = default;
  ClusterTree(std::vector<std::string> ground_keys, std::vector<TreeLevel> levels,
              TerminationCause cause, std::uint64_t graph_fingerprint = 0);

  std::size_t ground_count() const noexcept { return ground_keys_.size(); }
  std::span<const std::string> ground_keys() const noexcept { return ground_keys_; }
  const std::string& ground_key(VertexId p) const { return ground_keys_.at(p); }
  std::optional<VertexId> find_ground(std::string_view key) const;

  std::size_t level_count() const noexcept { return levels_.size(); }
  /// 1-based.
  const TreeLevel& level(std::uint32_t k) const { return levels_.at(k - 1); }
  std::span<const TreeLevel> levels() const noexcept { return levels_; }
  std::vector<std::size_t> level_sizes() const;

  TerminationCause termination_cause() const noexcept { return cause_; }
  std::uint64_t graph_fingerprint() const noexcept { return graph_fingerprint_; }
  void set_graph_fingerprint(std::uint64_t fp) noexcept { graph_fingerprint_ = fp; }

  bool contains(const ThemeId& t) const {
    return t.level >= 1 && t.level <= levels_.size() &&
           t.index < levels_[t.level - 1].partition.theme_count();
  }

  /// The paper's theme at every level, ground-up. Throws LookupError for an unknown vertex.
  std::vector<ThemeId> theme_path(VertexId p) const;
  std::vector<ThemeId> theme_path(std::string_view key) const;

  friend bool operator==(const ClusterTree& a, const ClusterTree& b) {
    return a.ground_keys_ == b.ground_keys_ && a.levels_ == b.levels_ && a.cause_ == b.cause_ &&
           a.graph_fingerprint_ == b.graph_fingerprint_;
  }

 private:
  std::vector<std::string> ground_keys_;
  std::vector<TreeLevel> levels_;
  TerminationCause cause_ = TerminationCause::no_progress;
  std::uint64_t graph_fingerprint_ = 0;
};

inline constexpr int kDefaultMaxLevels = 16;

/// Repeats eqrank_level on successive reduced graphs until no contraction happens, one
/// theme remains, or `max_levels` levels exist. A no-progress pass above level 1 is not
/// recorded as a level.
ClusterTree run_hierarchy(const CitationGraph& g, int max_levels = kDefaultMaxLevels);

/// Cluster tree JSON. See docs/formats.md.
inline constexpr int kTreeFormatVersion = 1;
void write_tree_json(std::ostream& out, const ClusterTree& tree);
ClusterTree read_tree_json(std::istream& in);

/// `vertex_key<TAB>level<TAB>theme_index<TAB>root_authority_key<TAB>root_hub_key` per paper
/// and level.
void write_partition_dump(std::ostream& out, const ClusterTree& tree);

}  // namespace eqrank
