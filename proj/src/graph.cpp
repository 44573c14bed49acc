#include "eqrank/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "eqrank/errors.hpp"
#include "eqrank/metadata.hpp"

namespace eqrank {

namespace {

constexpr VertexId kAbsent = std::numeric_limits<VertexId>::max();

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

VertexId find_root(std::vector<VertexId>& parent, VertexId v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

CitationGraph CitationGraph::from_edges(std::size_t n,
                                        std::vector<std::pair<VertexId, VertexId>> edges,
                                        std::vector<std::string> keys) {
  if (!keys.empty() && keys.size() != n) {
    throw DomainError("key count " + std::to_string(keys.size()) + " does not match n=" +
                      std::to_string(n));
  }
  if (n >= kAbsent) {
    throw DomainError("vertex count exceeds 32-bit id space");
  }
  std::erase_if(edges, [n](const auto& e) {
    if (e.first >= n || e.second >= n) {
      throw DomainError("edge endpoint out of range");
    }
    return e.first == e.second;
  });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  CitationGraph g;
  g.out_offsets_.assign(n + 1, 0);
  for (const auto& [p, q] : edges) {
    ++g.out_offsets_[p + 1];
  }
  std::partial_sum(g.out_offsets_.begin(), g.out_offsets_.end(), g.out_offsets_.begin());
  g.out_targets_.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    g.out_targets_[i] = edges[i].second;
  }
  g.keys_ = std::move(keys);
  g.build_transpose();
  g.build_key_index();
  return g;
}

CitationGraph CitationGraph::from_csr(std::vector<std::string> keys,
                                      std::vector<EdgeIndex> out_offsets,
                                      std::vector<VertexId> out_targets) {
  if (out_offsets.empty() || out_offsets.front() != 0 ||
      out_offsets.back() != out_targets.size()) {
    throw FormatError("inconsistent CSR offsets");
  }
  const std::size_t n = out_offsets.size() - 1;
  if (!keys.empty() && keys.size() != n) {
    throw FormatError("key count does not match vertex count");
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (out_offsets[p] > out_offsets[p + 1]) {
      throw FormatError("CSR offsets are not monotone at vertex " + std::to_string(p));
    }
    for (EdgeIndex e = out_offsets[p]; e < out_offsets[p + 1]; ++e) {
      const VertexId q = out_targets[e];
      if (q >= n) {
        throw FormatError("edge target out of range at vertex " + std::to_string(p));
      }
      if (q == p) {
        throw FormatError("self-loop at vertex " + std::to_string(p));
      }
      if (e > out_offsets[p] && out_targets[e - 1] >= q) {
        throw FormatError("adjacency list of vertex " + std::to_string(p) +
                          " is not strictly increasing");
      }
    }
  }
  CitationGraph g;
  g.out_offsets_ = std::move(out_offsets);
  g.out_targets_ = std::move(out_targets);
  g.keys_ = std::move(keys);
  g.build_transpose();
  g.build_key_index();
  if (g.has_keys() && g.key_index_.size() != n) {
    throw FormatError("duplicate vertex keys");
  }
  return g;
}

void CitationGraph::build_transpose() {
  const std::size_t n = vertex_count();
  in_offsets_.assign(n + 1, 0);
  for (VertexId q : out_targets_) {
    ++in_offsets_[q + 1];
  }
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
  in_sources_.resize(out_targets_.size());
  std::vector<EdgeIndex> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  // Scanning citers in increasing order leaves every in-list sorted.
  for (VertexId p = 0; p < n; ++p) {
    for (EdgeIndex e = out_offsets_[p]; e < out_offsets_[p + 1]; ++e) {
      in_sources_[cursor[out_targets_[e]]++] = p;
    }
  }
}

void CitationGraph::build_key_index() {
  key_index_.clear();
  key_index_.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    key_index_.emplace(keys_[i], static_cast<VertexId>(i));
  }
}

std::optional<EdgeIndex> CitationGraph::find_edge(VertexId p, VertexId q) const {
  const auto targets = out(p);
  const auto it = std::lower_bound(targets.begin(), targets.end(), q);
  if (it == targets.end() || *it != q) {
    return std::nullopt;
  }
  return out_offsets_[p] + static_cast<EdgeIndex>(it - targets.begin());
}

std::string CitationGraph::key(VertexId v) const {
  if (v >= vertex_count()) {
    throw LookupError("vertex " + std::to_string(v) + " out of range");
  }
  return has_keys() ? keys_[v] : "#" + std::to_string(v);
}

std::optional<VertexId> CitationGraph::find(std::string_view key) const {
  if (!has_keys()) {
    return std::nullopt;
  }
  const auto it = key_index_.find(std::string(key));
  if (it == key_index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

IngestResult load_edge_list(std::istream& source, const IngestOptions& options) {
  IngestReport report;
  std::vector<std::string> keys;
  std::unordered_map<std::string, VertexId> ids;
  std::vector<std::pair<VertexId, VertexId>> edges;

  auto intern = [&](std::string_view key) -> VertexId {
    auto [it, inserted] = ids.try_emplace(std::string(key), static_cast<VertexId>(keys.size()));
    if (inserted) {
      keys.emplace_back(key);
    }
    return it->second;
  };

  std::string line;
  while (std::getline(source, line)) {
    ++report.lines;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (is_blank(line)) {
      ++report.blank_lines;
      continue;
    }
    if (line.front() == options.comment) {
      ++report.comment_lines;
      continue;
    }
    const auto sep = line.find(options.separator);
    const auto fields = static_cast<std::size_t>(
        1 + std::count(line.begin(), line.end(), options.separator));
    if (fields != 2) {
      throw ParseError(report.lines,
                       "expected 2 tab-separated fields, got " + std::to_string(fields));
    }
    const std::string_view citing(line.data(), sep);
    const std::string_view cited(line.data() + sep + 1, line.size() - sep - 1);
    if (citing.empty() || cited.empty()) {
      throw ParseError(report.lines, "empty field");
    }
    ++report.edge_records;
    const VertexId p = intern(citing);
    const VertexId q = intern(cited);
    if (p == q) {
      ++report.self_loops_dropped;
      continue;
    }
    edges.emplace_back(p, q);
  }

  const std::size_t before = edges.size();
  const std::size_t n = keys.size();
  CitationGraph g = CitationGraph::from_edges(n, std::move(edges), std::move(keys));
  report.duplicates_collapsed = before - g.edge_count();
  g.set_raw_edge_records(report.edge_records);
  return {std::move(g), report};
}

CitationGraph induced_subgraph(const CitationGraph& g, std::span<const VertexId> vertices) {
  std::vector<VertexId> new_id(g.vertex_count(), kAbsent);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.vertex_count() || (i > 0 && vertices[i - 1] >= vertices[i])) {
      throw DomainError("induced_subgraph expects strictly increasing, in-range vertex ids");
    }
    new_id[vertices[i]] = static_cast<VertexId>(i);
  }
  std::vector<EdgeIndex> offsets(vertices.size() + 1, 0);
  std::vector<VertexId> targets;
  std::vector<std::string> keys;
  if (g.has_keys()) {
    keys.reserve(vertices.size());
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (VertexId q : g.out(vertices[i])) {
      if (new_id[q] != kAbsent) {
        targets.push_back(new_id[q]);
      }
    }
    offsets[i + 1] = targets.size();
    if (g.has_keys()) {
      keys.push_back(g.keys()[vertices[i]]);
    }
  }
  return CitationGraph::from_csr(std::move(keys), std::move(offsets), std::move(targets));
}

std::vector<VertexId> weak_component_labels(const CitationGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), VertexId{0});
  for (VertexId p = 0; p < n; ++p) {
    for (VertexId q : g.out(p)) {
      const VertexId a = find_root(parent, p);
      const VertexId b = find_root(parent, q);
      // Smaller id becomes the root, so every root is its component's minimum.
      if (a < b) {
        parent[b] = a;
      } else if (b < a) {
        parent[a] = b;
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    parent[v] = find_root(parent, v);
  }
  return parent;
}

ComponentResult largest_weak_component(const CitationGraph& g) {
  if (g.empty()) {
    throw EmptyGraphError("largest_weak_component: graph has no vertices");
  }
  const auto labels = weak_component_labels(g);
  std::vector<std::uint64_t> size(g.vertex_count(), 0);
  for (VertexId label : labels) {
    ++size[label];
  }
  VertexId best = 0;
  for (VertexId v = 1; v < g.vertex_count(); ++v) {
    if (size[v] > size[best]) {
      best = v;
    }
  }
  ComponentResult result;
  result.original_id.reserve(size[best]);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (labels[v] == best) {
      result.original_id.push_back(v);
    }
  }
  result.graph = induced_subgraph(g, result.original_id);
  return result;
}

GraphStats stats(const CitationGraph& g, const MetadataTable* metadata) {
  GraphStats s;
  s.vertex_count = g.vertex_count();
  s.edge_count = g.edge_count();
  if (g.has_keys()) {
    s.raw_edge_count = g.raw_edge_records();
  }
  if (metadata != nullptr) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const PaperMetadata* m = g.has_keys() ? metadata->find(g.keys()[v]) : nullptr;
      ++s.tagged_vertex_counts[m != nullptr ? std::string(to_string(m->tag)) : "untagged"];
    }
  }
  return s;
}

}  // namespace eqrank
