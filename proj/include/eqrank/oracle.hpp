#pragma once

// Deliberately naive reference implementations used by the test suites and by
// `eqrank verify`. Nothing here shares code with the kernels it checks: graphs are
// re-read into a dense adjacency matrix and every quantity is recomputed from it.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <span>
#include <utility>
#include <vector>

#include "eqrank/graph.hpp"
#include "eqrank/hierarchy.hpp"
#include "eqrank/metadata.hpp"
#include "eqrank/types.hpp"

namespace eqrank::oracle {

/// Dense adjacency matrix; adj(p, q) is true iff p cites q.
class DenseGraph {
 public:
  DenseGraph(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges);
  explicit DenseGraph(const CitationGraph& g);

  std::size_t size() const noexcept { return n_; }
  bool adj(VertexId p, VertexId q) const { return bits_[static_cast<std::size_t>(p) * n_ + q] != 0; }
  std::vector<std::pair<VertexId, VertexId>> edges() const;

 private:
  std::size_t n_;
  std::vector<char> bits_;
};

/// Triple-loop co-citation count. Throws DomainError when p == q.
std::uint64_t oracle_cocitation(const DenseGraph& g, VertexId p, VertexId q);
std::uint64_t oracle_cocitation(const CitationGraph& g, VertexId p, VertexId q);

/// Walks each trajectory with a visited set until it repeats; root = smallest cycle vertex.
std::vector<VertexId> naive_roots(std::span<const VertexId> next);

/// Groups units by exact (root authority, root hub) pair; themes numbered by first member.
struct NaivePartition {
  std::vector<ThemeIndex> theme_of;
  std::vector<std::pair<VertexId, VertexId>> roots;
};
NaivePartition naive_partition(std::span<const VertexId> root_authority,
                               std::span<const VertexId> root_hub);

/// Cross-theme edge -> multiplicity, by nested loops over all vertex pairs.
std::map<std::pair<ThemeIndex, ThemeIndex>, std::uint64_t> naive_contraction(
    const DenseGraph& g, std::span<const ThemeIndex> theme_of);

struct NaiveLevel {
  std::vector<VertexId> local_authority;
  std::vector<VertexId> local_hub;
  std::vector<VertexId> root_authority;
  std::vector<VertexId> root_hub;
  NaivePartition partition;
};

/// Straight-line single clustering pass over the dense matrix.
NaiveLevel naive_level(const DenseGraph& g);

struct NaiveHierarchy {
  std::vector<NaivePartition> levels;
  TerminationCause cause = TerminationCause::no_progress;
};

NaiveHierarchy naive_hierarchy(const DenseGraph& g, int max_levels = kDefaultMaxLevels);

struct NaiveHit {
  std::string key;
  std::size_t match_count = 0;

  friend bool operator==(const NaiveHit&, const NaiveHit&) = default;
};

/// Linear scan over every metadata record of a tree paper, with its own tokenizer.
std::vector<NaiveHit> naive_search(const MetadataTable& metadata, const ClusterTree& tree,
                                   std::string_view query, std::optional<ThemeId> theme_filter,
                                   std::size_t limit);

}  // namespace eqrank::oracle
