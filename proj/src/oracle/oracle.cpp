#include "eqrank/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "eqrank/errors.hpp"

namespace eqrank::oracle {

DenseGraph::DenseGraph(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges)
    : n_(n), bits_(n * n, 0) {
  for (const auto& [p, q] : edges) {
    if (p != q) {
      bits_[static_cast<std::size_t>(p) * n_ + q] = 1;
    }
  }
}

DenseGraph::DenseGraph(const CitationGraph& g) : n_(g.vertex_count()), bits_(n_ * n_, 0) {
  for (VertexId p = 0; p < n_; ++p) {
    for (VertexId q : g.out(p)) {
      bits_[static_cast<std::size_t>(p) * n_ + q] = 1;
    }
  }
}

std::vector<std::pair<VertexId, VertexId>> DenseGraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId p = 0; p < n_; ++p) {
    for (VertexId q = 0; q < n_; ++q) {
      if (adj(p, q)) {
        out.emplace_back(p, q);
      }
    }
  }
  return out;
}

std::uint64_t oracle_cocitation(const DenseGraph& g, VertexId p, VertexId q) {
  if (p == q) {
    throw DomainError("co-citation of a vertex with itself is undefined");
  }
  std::uint64_t count = 0;
  for (VertexId r = 0; r < g.size(); ++r) {
    if (r != p && r != q && g.adj(r, p) && g.adj(r, q)) {
      ++count;
    }
  }
  return count;
}

std::uint64_t oracle_cocitation(const CitationGraph& g, VertexId p, VertexId q) {
  return oracle_cocitation(DenseGraph(g), p, q);
}

std::vector<VertexId> naive_roots(std::span<const VertexId> next) {
  const std::size_t n = next.size();
  std::vector<VertexId> root(n);
  std::vector<std::int64_t> seen_at(n, -1);
  std::vector<VertexId> trail;
  for (VertexId start = 0; start < n; ++start) {
    trail.clear();
    VertexId v = start;
    while (seen_at[v] < 0) {
      seen_at[v] = static_cast<std::int64_t>(trail.size());
      trail.push_back(v);
      v = next[v];
    }
    // trail[seen_at[v]..] is the terminal cycle.
    VertexId smallest = v;
    for (auto i = static_cast<std::size_t>(seen_at[v]); i < trail.size(); ++i) {
      smallest = std::min(smallest, trail[i]);
    }
    root[start] = smallest;
    for (VertexId u : trail) {
      seen_at[u] = -1;
    }
  }
  return root;
}

NaivePartition naive_partition(std::span<const VertexId> root_authority,
                               std::span<const VertexId> root_hub) {
  NaivePartition part;
  std::map<std::pair<VertexId, VertexId>, ThemeIndex> index;
  for (std::size_t v = 0; v < root_authority.size(); ++v) {
    const std::pair<VertexId, VertexId> key{root_authority[v], root_hub[v]};
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, static_cast<ThemeIndex>(part.roots.size())).first;
      part.roots.push_back(key);
    }
    part.theme_of.push_back(it->second);
  }
  return part;
}

std::map<std::pair<ThemeIndex, ThemeIndex>, std::uint64_t> naive_contraction(
    const DenseGraph& g, std::span<const ThemeIndex> theme_of) {
  std::map<std::pair<ThemeIndex, ThemeIndex>, std::uint64_t> out;
  for (VertexId p = 0; p < g.size(); ++p) {
    for (VertexId q = 0; q < g.size(); ++q) {
      if (g.adj(p, q) && theme_of[p] != theme_of[q]) {
        ++out[{theme_of[p], theme_of[q]}];
      }
    }
  }
  return out;
}

NaiveLevel naive_level(const DenseGraph& g) {
  const std::size_t n = g.size();
  NaiveLevel level;
  level.local_authority.resize(n);
  level.local_hub.resize(n);
  for (VertexId p = 0; p < n; ++p) {
    VertexId best = p;
    std::uint64_t best_weight = 0;
    bool found = false;
    for (VertexId q = 0; q < n; ++q) {
      if (!g.adj(p, q)) continue;
      const auto w = oracle_cocitation(g, p, q);
      if (!found || w > best_weight) {
        best = q;
        best_weight = w;
        found = true;
      }
    }
    level.local_authority[p] = best;

    best = p;
    best_weight = 0;
    found = false;
    for (VertexId r = 0; r < n; ++r) {
      if (!g.adj(r, p)) continue;
      const auto w = oracle_cocitation(g, r, p);
      if (!found || w > best_weight) {
        best = r;
        best_weight = w;
        found = true;
      }
    }
    level.local_hub[p] = best;
  }
  level.root_authority = naive_roots(level.local_authority);
  level.root_hub = naive_roots(level.local_hub);
  level.partition = naive_partition(level.root_authority, level.root_hub);
  return level;
}

NaiveHierarchy naive_hierarchy(const DenseGraph& g, int max_levels) {
  NaiveHierarchy h;
  DenseGraph current = g;
  for (int k = 1;; ++k) {
    NaiveLevel level = naive_level(current);
    const std::size_t units = current.size();
    const std::size_t themes = level.partition.roots.size();
    if (k > 1 && themes == units) {
      h.cause = TerminationCause::no_progress;
      return h;
    }
    h.levels.push_back(level.partition);
    if (themes == 1) {
      h.cause = TerminationCause::single_theme;
      return h;
    }
    if (themes == units) {
      h.cause = TerminationCause::no_progress;
      return h;
    }
    if (k == max_levels) {
      h.cause = TerminationCause::max_levels;
      return h;
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& [edge, count] : naive_contraction(current, level.partition.theme_of)) {
      edges.push_back(edge);
    }
    current = DenseGraph(themes, edges);
  }
}

namespace {

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= 0x80 || std::isalnum(c)) {
      cur.push_back(static_cast<char>(c < 0x80 ? std::tolower(c) : c));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

std::vector<NaiveHit> naive_search(const MetadataTable& metadata, const ClusterTree& tree,
                                   std::string_view query, std::optional<ThemeId> theme_filter,
                                   std::size_t limit) {
  const auto q = words(query);
  const std::set<std::string> terms(q.begin(), q.end());
  std::vector<NaiveHit> hits;
  if (terms.empty()) return hits;
  for (const auto& record : metadata.records()) {
    const auto p = tree.find_ground(record.key);
    if (!p) continue;
    if (theme_filter) {
      if (!tree.contains(*theme_filter)) return {};
      if (tree.theme_path(*p)[theme_filter->level - 1] != *theme_filter) continue;
    }
    std::vector<std::string> tokens = words(record.title);
    for (const auto& a : record.authors) {
      for (auto& w : words(a)) tokens.push_back(std::move(w));
    }
    bool all = true;
    for (const auto& t : terms) {
      all = all && std::find(tokens.begin(), tokens.end(), t) != tokens.end();
    }
    if (!all) continue;
    std::size_t count = 0;
    for (const auto& t : tokens) count += terms.count(t);
    hits.push_back({record.key, count});
  }
  std::sort(hits.begin(), hits.end(), [](const NaiveHit& a, const NaiveHit& b) {
    return a.match_count != b.match_count ? a.match_count > b.match_count : a.key < b.key;
  });
  if (hits.size() > limit) hits.resize(limit);
  return hits;
}

}  // namespace eqrank::oracle
