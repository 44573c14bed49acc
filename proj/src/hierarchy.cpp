#include "eqrank/hierarchy.hpp"

#include <algorithm>
#include <cstdint>

#include "eqrank/cocitation.hpp"
#include "eqrank/errors.hpp"

namespace eqrank {

namespace {

ReducedGraph assemble(std::vector<EdgeIndex> offsets, std::vector<VertexId> targets,
                      std::vector<std::uint64_t> multiplicity) {
  ReducedGraph r;
  r.graph = CitationGraph::from_csr({}, std::move(offsets), std::move(targets));
  r.multiplicity = std::move(multiplicity);
  return r;
}

void check_partition(const CitationGraph& g, const Partition& part) {
  if (part.unit_count() != g.vertex_count()) {
    throw DomainError("partition covers " + std::to_string(part.unit_count()) +
                      " units but the graph has " + std::to_string(g.vertex_count()));
  }
}

}  // namespace

ReducedGraph reduce_graph(const CitationGraph& g, const Partition& part) {
  check_partition(g, part);
  const std::size_t k = part.theme_count();
  const auto sk = static_cast<std::int64_t>(k);
  std::vector<std::vector<std::pair<VertexId, std::uint64_t>>> rows(k);

#pragma omp parallel
  {
    std::vector<VertexId> buffer;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < sk; ++i) {
      const auto t = static_cast<ThemeIndex>(i);
      buffer.clear();
      for (VertexId p : part.members(t)) {
        for (VertexId q : g.out(p)) {
          const ThemeIndex u = part.theme_of(q);
          if (u != t) {
            buffer.push_back(u);
          }
        }
      }
      std::sort(buffer.begin(), buffer.end());
      auto& row = rows[t];
      for (std::size_t j = 0; j < buffer.size();) {
        std::size_t end = j;
        while (end < buffer.size() && buffer[end] == buffer[j]) {
          ++end;
        }
        row.emplace_back(buffer[j], end - j);
        j = end;
      }
    }
  }

  std::vector<EdgeIndex> offsets(k + 1, 0);
  for (std::size_t t = 0; t < k; ++t) {
    offsets[t + 1] = offsets[t] + rows[t].size();
  }
  std::vector<VertexId> targets(offsets.back());
  std::vector<std::uint64_t> multiplicity(offsets.back());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < sk; ++i) {
    auto& row = rows[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      targets[offsets[i] + j] = row[j].first;
      multiplicity[offsets[i] + j] = row[j].second;
    }
    std::vector<std::pair<VertexId, std::uint64_t>>().swap(row);
  }
  return assemble(std::move(offsets), std::move(targets), std::move(multiplicity));
}

namespace serial {

ReducedGraph reduce_graph(const CitationGraph& g, const Partition& part) {
  check_partition(g, part);
  std::vector<std::pair<VertexId, VertexId>> cross;
  for (VertexId p = 0; p < g.vertex_count(); ++p) {
    for (VertexId q : g.out(p)) {
      if (part.theme_of(p) != part.theme_of(q)) {
        cross.emplace_back(part.theme_of(p), part.theme_of(q));
      }
    }
  }
  std::sort(cross.begin(), cross.end());
  const std::size_t k = part.theme_count();
  std::vector<EdgeIndex> offsets(k + 1, 0);
  std::vector<VertexId> targets;
  std::vector<std::uint64_t> multiplicity;
  for (std::size_t i = 0; i < cross.size(); ++i) {
    if (i > 0 && cross[i] == cross[i - 1]) {
      ++multiplicity.back();
      continue;
    }
    ++offsets[cross[i].first + 1];
    targets.push_back(cross[i].second);
    multiplicity.push_back(1);
  }
  for (std::size_t t = 0; t < k; ++t) {
    offsets[t + 1] += offsets[t];
  }
  return assemble(std::move(offsets), std::move(targets), std::move(multiplicity));
}

}  // namespace serial

std::string_view to_string(TerminationCause cause) {
  switch (cause) {
    case TerminationCause::no_progress:
      return "no_progress";
    case TerminationCause::single_theme:
      return "single_theme";
    case TerminationCause::max_levels:
      return "max_levels";
  }
  return "no_progress";
}

std::optional<TerminationCause> parse_termination_cause(std::string_view s) {
  if (s == "no_progress") return TerminationCause::no_progress;
  if (s == "single_theme") return TerminationCause::single_theme;
  if (s == "max_levels") return TerminationCause::max_levels;
  return std::nullopt;
}

ClusterTree::ClusterTree(std::vector<std::string> ground_keys, std::vector<TreeLevel> levels,
                         TerminationCause cause, std::uint64_t graph_fingerprint)
    : ground_keys_(std::move(ground_keys)),
      levels_(std::move(levels)),
      cause_(cause),
      graph_fingerprint_(graph_fingerprint) {
  std::size_t units = ground_keys_.size();
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    TreeLevel& level = levels_[k];
    if (level.partition.unit_count() != units) {
      throw FormatError("level " + std::to_string(k + 1) + " partitions " +
                        std::to_string(level.partition.unit_count()) + " units, expected " +
                        std::to_string(units));
    }
    const std::size_t themes = level.partition.theme_count();
    level.root_authority_paper.resize(themes);
    level.root_hub_paper.resize(themes);
    for (ThemeIndex t = 0; t < themes; ++t) {
      const auto& roots = level.partition.roots(t);
      if (k == 0) {
        level.root_authority_paper[t] = roots.root_authority;
        level.root_hub_paper[t] = roots.root_hub;
      } else {
        level.root_authority_paper[t] = levels_[k - 1].root_authority_paper[roots.root_authority];
        level.root_hub_paper[t] = levels_[k - 1].root_hub_paper[roots.root_hub];
      }
    }
    if (k > 0) {
      levels_[k - 1].parent.assign(level.partition.theme_of().begin(),
                                   level.partition.theme_of().end());
    }
    units = themes;
  }
  if (!levels_.empty()) {
    levels_.back().parent.clear();
  }
}

std::optional<VertexId> ClusterTree::find_ground(std::string_view key) const {
  // Linear scan is fine for occasional lookups; the catalog keeps its own key index.
  const auto it = std::find(ground_keys_.begin(), ground_keys_.end(), key);
  if (it == ground_keys_.end()) {
    return std::nullopt;
  }
  return static_cast<VertexId>(it - ground_keys_.begin());
}

std::vector<std::size_t> ClusterTree::level_sizes() const {
  std::vector<std::size_t> sizes;
  for (const auto& level : levels_) {
    sizes.push_back(level.partition.theme_count());
  }
  return sizes;
}

std::vector<ThemeId> ClusterTree::theme_path(VertexId p) const {
  if (p >= ground_count()) {
    throw LookupError("unknown vertex " + std::to_string(p));
  }
  std::vector<ThemeId> path;
  path.reserve(levels_.size());
  VertexId unit = p;
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    unit = levels_[k].partition.theme_of(unit);
    path.push_back({static_cast<std::uint32_t>(k + 1), unit});
  }
  return path;
}

std::vector<ThemeId> ClusterTree::theme_path(std::string_view key) const {
  const auto p = find_ground(key);
  if (!p) {
    throw LookupError("unknown paper '" + std::string(key) + "'");
  }
  return theme_path(*p);
}

ClusterTree run_hierarchy(const CitationGraph& g, int max_levels) {
  if (max_levels < 1) {
    throw DomainError("max_levels must be at least 1");
  }
  std::vector<TreeLevel> levels;
  TerminationCause cause = TerminationCause::max_levels;
  CitationGraph reduced;
  const CitationGraph* current = &g;

  for (int k = 1;; ++k) {
    const WeightedGraph wg = weight_all_edges(*current);
    LevelResult result = eqrank_level(wg);
    const std::size_t units = current->vertex_count();
    const std::size_t themes = result.partition.theme_count();
    if (k > 1 && themes == units) {
      cause = TerminationCause::no_progress;
      break;
    }
    TreeLevel level;
    level.diagnostics = {units, current->edge_count(), result.zero_weight_authority_picks,
                         result.zero_weight_hub_picks};
    level.partition = std::move(result.partition);
    levels.push_back(std::move(level));

    if (themes == 1) {
      cause = TerminationCause::single_theme;
      break;
    }
    if (themes == units) {
      cause = TerminationCause::no_progress;
      break;
    }
    if (k == max_levels) {
      cause = TerminationCause::max_levels;
      break;
    }
    reduced = reduce_graph(*current, levels.back().partition).graph;
    current = &reduced;
  }

  std::vector<std::string> keys;
  keys.reserve(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    keys.push_back(g.key(v));
  }
  return ClusterTree(std::move(keys), std::move(levels), cause);
}

}  // namespace eqrank
