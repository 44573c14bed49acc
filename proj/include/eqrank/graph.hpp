#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eqrank/types.hpp"

namespace eqrank {

class MetadataTable;

/**
 * Immutable directed citation graph in compressed sparse row form.
 *
 * An edge p -> q means "p cites q". Both directions are stored: out-lists hold cited
 * vertices, in-lists hold citing vertices. Every list is strictly increasing and there
 * are no self-loops.
 *
 * Vertices may carry external keys (graphs loaded from files) or be anonymous (reduced
 * graphs built during contraction); anonymous vertices report the key "#<id>".
 */
class CitationGraph {
 public:
  CitationGraph() : out_offsets_(1, 0), in_offsets_(1, 0) {}

  /// Builds a graph from an arbitrary edge list. Duplicates are collapsed, self-loops dropped.
  /// `keys` may be empty (anonymous vertices) or have exactly `n` entries.
  static CitationGraph from_edges(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges,
                                  std::vector<std::string> keys = {});

  /// Builds a graph from CSR arrays; throws FormatError unless they are already normalized.
  static CitationGraph from_csr(std::vector<std::string> keys, std::vector<EdgeIndex> out_offsets,
                                std::vector<VertexId> out_targets);

  std::size_t vertex_count() const noexcept { return out_offsets_.size() - 1; }
  std::uint64_t edge_count() const noexcept { return out_targets_.size(); }
  bool empty() const noexcept { return vertex_count() == 0; }

  std::span<const VertexId> out(VertexId p) const {
    return {out_targets_.data() + out_offsets_[p], out_targets_.data() + out_offsets_[p + 1]};
  }
  std::span<const VertexId> in(VertexId q) const {
    return {in_sources_.data() + in_offsets_[q], in_sources_.data() + in_offsets_[q + 1]};
  }
  std::size_t out_degree(VertexId p) const { return out_offsets_[p + 1] - out_offsets_[p]; }
  std::size_t in_degree(VertexId q) const { return in_offsets_[q + 1] - in_offsets_[q]; }

  /// First CSR position of p's out-edges; weights are indexed by these positions.
  EdgeIndex out_begin(VertexId p) const { return out_offsets_[p]; }
  EdgeIndex in_begin(VertexId q) const { return in_offsets_[q]; }

  /// Returns the CSR position of edge p -> q, or nullopt if absent.
  std::optional<EdgeIndex> find_edge(VertexId p, VertexId q) const;
  bool has_edge(VertexId p, VertexId q) const { return find_edge(p, q).has_value(); }

  std::span<const EdgeIndex> out_offsets() const noexcept { return out_offsets_; }
  std::span<const VertexId> out_targets() const noexcept { return out_targets_; }
  std::span<const EdgeIndex> in_offsets() const noexcept { return in_offsets_; }
  std::span<const VertexId> in_sources() const noexcept { return in_sources_; }

  bool has_keys() const noexcept { return !keys_.empty(); }
  std::string key(VertexId v) const;
  std::span<const std::string> keys() const noexcept { return keys_; }
  std::optional<VertexId> find(std::string_view key) const;

  /// Edge records seen by the loader before normalization (0 when not loaded from text).
  std::uint64_t raw_edge_records() const noexcept { return raw_edge_records_; }
  void set_raw_edge_records(std::uint64_t n) noexcept { raw_edge_records_ = n; }

  friend bool operator==(const CitationGraph& a, const CitationGraph& b) {
    return a.out_offsets_ == b.out_offsets_ && a.out_targets_ == b.out_targets_ &&
           a.keys_ == b.keys_ && a.raw_edge_records_ == b.raw_edge_records_;
  }

 private:
  void build_transpose();
  void build_key_index();

  std::vector<EdgeIndex> out_offsets_;
  std::vector<VertexId> out_targets_;
  std::vector<EdgeIndex> in_offsets_;
  std::vector<VertexId> in_sources_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, VertexId> key_index_;
  std::uint64_t raw_edge_records_ = 0;
};

struct IngestOptions {
  char separator = '\t';
  char comment = '#';
};

/// What the loader did to the raw records.
struct IngestReport {
  std::uint64_t lines = 0;
  std::uint64_t comment_lines = 0;
  std::uint64_t blank_lines = 0;
  std::uint64_t edge_records = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_collapsed = 0;
};

struct IngestResult {
  CitationGraph graph;
  IngestReport report;
};

/// Parses a `citing<TAB>cited` edge list. Vertices are numbered in first-appearance order.
/// Throws ParseError (with line number) on a wrong field count or an empty field.
IngestResult load_edge_list(std::istream& source, const IngestOptions& options = {});

/// Induced subgraph on `vertices` (strictly increasing original ids). Keys are carried over;
/// new id i corresponds to vertices[i].
CitationGraph induced_subgraph(const CitationGraph& g, std::span<const VertexId> vertices);

struct ComponentResult {
  CitationGraph graph;
  /// original_id[new_id]
  std::vector<VertexId> original_id;
};

/// Largest weakly connected component. Ties between equal sizes go to the component with
/// the smallest minimum vertex id. Throws EmptyGraphError when g has no vertices.
ComponentResult largest_weak_component(const CitationGraph& g);

/// Component label per vertex; labels are numbered by each component's smallest vertex.
std::vector<VertexId> weak_component_labels(const CitationGraph& g);

struct GraphStats {
  std::uint64_t vertex_count = 0;
  std::uint64_t edge_count = 0;
  /// Records before de-duplication and self-loop removal, when known.
  std::optional<std::uint64_t> raw_edge_count;
  /// Tag name -> vertex count; vertices without metadata are counted under "untagged".
  std::map<std::string, std::uint64_t> tagged_vertex_counts;
  std::optional<std::uint64_t> lcc_vertex_count;
};

GraphStats stats(const CitationGraph& g, const MetadataTable* metadata = nullptr);

}  // namespace eqrank
