#include "eqrank/catalog.hpp"

#include <algorithm>
#include <cctype>

#include "eqrank/errors.hpp"
#include "eqrank/level.hpp"

namespace eqrank {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= 0x80 || std::isalnum(c) != 0) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) {
    tokens.push_back(std::move(current));
  }
  return tokens;
}

namespace {

std::vector<std::string> paper_tokens(const PaperMetadata& m) {
  auto tokens = tokenize(m.title);
  for (const auto& author : m.authors) {
    auto more = tokenize(author);
    tokens.insert(tokens.end(), std::make_move_iterator(more.begin()),
                  std::make_move_iterator(more.end()));
  }
  return tokens;
}

}  // namespace

void Catalog::index() {
  const std::size_t n = tree_.ground_count();
  key_index_.clear();
  key_index_.reserve(n);
  for (VertexId p = 0; p < n; ++p) {
    key_index_.emplace(tree_.ground_key(p), p);
  }

  const std::size_t levels = tree_.level_count();
  member_offsets_.assign(levels, {});
  members_.assign(levels, {});
  summaries_.assign(levels, {});
  std::vector<ThemeIndex> ground_theme(n);
  for (VertexId p = 0; p < n; ++p) {
    ground_theme[p] = p;
  }
  for (std::uint32_t k = 1; k <= levels; ++k) {
    const TreeLevel& level = tree_.level(k);
    const Partition& part = level.partition;
    for (VertexId p = 0; p < n; ++p) {
      ground_theme[p] = part.theme_of(ground_theme[p]);
    }
    auto& offsets = member_offsets_[k - 1];
    auto& members = members_[k - 1];
    offsets.assign(part.theme_count() + 1, 0);
    for (VertexId p = 0; p < n; ++p) {
      ++offsets[ground_theme[p] + 1];
    }
    for (std::size_t t = 0; t < part.theme_count(); ++t) {
      offsets[t + 1] += offsets[t];
    }
    members.resize(n);
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (VertexId p = 0; p < n; ++p) {
      members[cursor[ground_theme[p]]++] = p;
    }

    auto& summaries = summaries_[k - 1];
    summaries.resize(part.theme_count());
    for (ThemeIndex t = 0; t < part.theme_count(); ++t) {
      ThemeSummary& s = summaries[t];
      s.theme = {k, t};
      s.size = offsets[t + 1] - offsets[t];
      s.root_authority_key = tree_.ground_key(level.root_authority_paper[t]);
      s.root_hub_key = tree_.ground_key(level.root_hub_paper[t]);
      if (!level.parent.empty()) {
        s.parent = ThemeId{k + 1, level.parent[t]};
      }
      if (k > 1) {
        for (VertexId child : part.members(t)) {
          s.children.push_back({k - 1, child});
        }
      }
    }
  }

  token_index_.clear();
  searchable_ = 0;
  for (VertexId p = 0; p < n; ++p) {
    const PaperMetadata* m = metadata(p);
    if (m == nullptr) {
      continue;
    }
    ++searchable_;
    for (auto& token : paper_tokens(*m)) {
      auto& posting = token_index_[std::move(token)];
      if (posting.empty() || posting.back() != p) {
        posting.push_back(p);
      }
    }
  }
}

Catalog Catalog::build(const ClusterTree& tree, const WeightedGraph& wg,
                       const MetadataTable& metadata, const CatalogOptions& options,
                       std::vector<std::string>* warnings) {
  const CitationGraph& g = wg.graph();
  if (g.vertex_count() != tree.ground_count()) {
    throw DomainError("catalog: graph has " + std::to_string(g.vertex_count()) +
                      " vertices but the tree has " + std::to_string(tree.ground_count()) +
                      " papers");
  }
  for (VertexId p = 0; p < g.vertex_count() && g.has_keys(); ++p) {
    if (g.keys()[p] != tree.ground_key(p)) {
      throw DomainError("catalog: graph and tree disagree on the key of vertex " +
                        std::to_string(p));
    }
  }

  Catalog c;
  c.tree_ = tree;
  c.ranking_depth_ = std::max<std::size_t>(options.ranking_depth, 1);
  const std::size_t n = tree.ground_count();

  std::unordered_map<std::string_view, VertexId> ids;
  ids.reserve(n);
  for (VertexId p = 0; p < n; ++p) {
    ids.emplace(tree.ground_key(p), p);
  }
  c.record_of_.assign(n, -1);
  for (const PaperMetadata& record : metadata.records()) {
    const auto it = ids.find(record.key);
    if (it == ids.end()) {
      if (warnings != nullptr) {
        warnings->push_back("metadata key '" + record.key + "' is not in the graph; skipped");
      }
      continue;
    }
    c.record_of_[it->second] = static_cast<std::int64_t>(c.records_.size());
    c.records_.push_back(record);
  }

  c.local_authority_ = local_authority_map(wg);
  c.local_hub_ = local_hub_map(wg);
  c.index();

  const std::size_t levels = tree.level_count();
  c.rankings_.assign(levels, {});
  std::vector<ThemeIndex> ground_theme(n);
  std::vector<std::uint64_t> authority_score(n);
  std::vector<std::uint64_t> hub_score(n);
  for (std::uint32_t k = 1; k <= levels; ++k) {
    const TreeLevel& level = tree.level(k);
    const auto& offsets = c.member_offsets_[k - 1];
    const auto& members = c.members_[k - 1];
    for (ThemeIndex t = 0; t + 1 < offsets.size(); ++t) {
      for (auto i = offsets[t]; i < offsets[t + 1]; ++i) {
        ground_theme[members[i]] = t;
      }
    }
    const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1024)
    for (std::int64_t i = 0; i < sn; ++i) {
      const auto x = static_cast<VertexId>(i);
      std::uint64_t a = 0;
      const auto citers = g.in(x);
      const auto in_w = wg.in_weights(x);
      for (std::size_t j = 0; j < citers.size(); ++j) {
        a += ground_theme[citers[j]] == ground_theme[x] ? in_w[j] : 0;
      }
      std::uint64_t h = 0;
      const auto cited = g.out(x);
      const auto out_w = wg.out_weights(x);
      for (std::size_t j = 0; j < cited.size(); ++j) {
        h += ground_theme[cited[j]] == ground_theme[x] ? out_w[j] : 0;
      }
      authority_score[x] = a;
      hub_score[x] = h;
    }

    const std::size_t themes = level.partition.theme_count();
    auto& rankings = c.rankings_[k - 1];
    rankings.resize(themes);
    const auto st = static_cast<std::int64_t>(themes);
    const std::size_t depth = c.ranking_depth_;
    auto rank = [&](ThemeIndex t, VertexId root, const std::vector<std::uint64_t>& score,
                    bool authority) {
      std::vector<std::pair<VertexId, std::uint64_t>> cand;
      cand.reserve(offsets[t + 1] - offsets[t] + 1);
      for (auto i = offsets[t]; i < offsets[t + 1]; ++i) {
        cand.emplace_back(members[i], score[members[i]]);
      }
      if (ground_theme[root] != t) {
        // The root lies outside the theme: score it against the theme's papers only.
        std::uint64_t s = 0;
        const auto nbrs = authority ? g.in(root) : g.out(root);
        const auto w = authority ? wg.in_weights(root) : wg.out_weights(root);
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
          s += ground_theme[nbrs[j]] == t ? w[j] : 0;
        }
        cand.emplace_back(root, s);
      }
      const auto before = [&](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return tree.ground_key(a.first) < tree.ground_key(b.first);
      };
      const std::size_t keep = std::min(depth, cand.size());
      std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(keep),
                        cand.end(), before);
      const bool root_kept = std::any_of(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(keep),
                                         [&](const auto& e) { return e.first == root; });
      if (!root_kept) {
        const auto it = std::find_if(cand.begin(), cand.end(),
                                     [&](const auto& e) { return e.first == root; });
        cand[keep - 1] = *it;
      }
      cand.resize(keep);
      return cand;
    };
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < st; ++i) {
      const auto t = static_cast<ThemeIndex>(i);
      rankings[t].authorities = rank(t, level.root_authority_paper[t], authority_score, true);
      rankings[t].hubs = rank(t, level.root_hub_paper[t], hub_score, false);
    }
  }
  return c;
}

std::optional<VertexId> Catalog::find_paper(std::string_view key) const {
  const auto it = key_index_.find(std::string(key));
  if (it == key_index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

const PaperMetadata* Catalog::metadata(VertexId p) const {
  const auto r = record_of_.at(p);
  return r < 0 ? nullptr : &records_[static_cast<std::size_t>(r)];
}

VertexId Catalog::root_authority(VertexId p) const {
  const TreeLevel& level = tree_.level(1);
  return level.root_authority_paper[level.partition.theme_of(p)];
}

VertexId Catalog::root_hub(VertexId p) const {
  const TreeLevel& level = tree_.level(1);
  return level.root_hub_paper[level.partition.theme_of(p)];
}

void Catalog::check_theme(const ThemeId& theme) const {
  if (!tree_.contains(theme)) {
    throw LookupError("unknown theme " + to_string(theme));
  }
}

const ThemeSummary& Catalog::summary(const ThemeId& theme) const {
  check_theme(theme);
  return summaries_[theme.level - 1][theme.index];
}

std::span<const ThemeSummary> Catalog::summaries(std::uint32_t level) const {
  if (level < 1 || level > summaries_.size()) {
    throw LookupError("unknown level " + std::to_string(level));
  }
  return summaries_[level - 1];
}

std::span<const VertexId> Catalog::members(const ThemeId& theme) const {
  check_theme(theme);
  const auto& offsets = member_offsets_[theme.level - 1];
  const auto& members = members_[theme.level - 1];
  return {members.data() + offsets[theme.index], members.data() + offsets[theme.index + 1]};
}

std::vector<RankedPaper> Catalog::top(
    const std::vector<std::pair<VertexId, std::uint64_t>>& ranked, VertexId root,
    std::size_t limit) const {
  std::vector<RankedPaper> out;
  if (limit == 0) {
    return out;
  }
  const std::size_t keep = std::min(limit, ranked.size());
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back({key(ranked[i].first), ranked[i].second});
  }
  const bool has_root = std::any_of(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                                    [&](const auto& e) { return e.first == root; });
  if (!has_root) {
    const auto it = std::find_if(ranked.begin(), ranked.end(),
                                 [&](const auto& e) { return e.first == root; });
    if (it != ranked.end()) {
      out.back() = {key(it->first), it->second};
    }
  }
  return out;
}

std::vector<RankedPaper> Catalog::theme_authorities(const ThemeId& theme,
                                                    std::size_t limit) const {
  check_theme(theme);
  return top(rankings_[theme.level - 1][theme.index].authorities,
             tree_.level(theme.level).root_authority_paper[theme.index], limit);
}

std::vector<RankedPaper> Catalog::theme_hubs(const ThemeId& theme, std::size_t limit) const {
  check_theme(theme);
  return top(rankings_[theme.level - 1][theme.index].hubs,
             tree_.level(theme.level).root_hub_paper[theme.index], limit);
}

HubAuthorityList Catalog::hub_authority_list(const ThemeId& theme, std::size_t limit) const {
  return {theme, theme_authorities(theme, limit), theme_hubs(theme, limit)};
}

std::vector<SearchHit> Catalog::search(std::string_view query,
                                       std::optional<ThemeId> theme_filter,
                                       std::size_t limit) const {
  auto terms = tokenize(query);
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (terms.empty() || limit == 0) {
    return {};
  }
  if (theme_filter) {
    check_theme(*theme_filter);
  }

  std::vector<const std::vector<VertexId>*> postings;
  for (const auto& term : terms) {
    const auto it = token_index_.find(term);
    if (it == token_index_.end()) {
      return {};
    }
    postings.push_back(&it->second);
  }
  std::sort(postings.begin(), postings.end(),
            [](const auto* a, const auto* b) { return a->size() < b->size(); });
  std::vector<VertexId> candidates = *postings.front();
  for (std::size_t i = 1; i < postings.size() && !candidates.empty(); ++i) {
    std::vector<VertexId> next;
    std::set_intersection(candidates.begin(), candidates.end(), postings[i]->begin(),
                          postings[i]->end(), std::back_inserter(next));
    candidates = std::move(next);
  }

  std::vector<SearchHit> hits;
  for (VertexId p : candidates) {
    auto path = tree_.theme_path(p);
    if (theme_filter && path[theme_filter->level - 1] != *theme_filter) {
      continue;
    }
    const PaperMetadata& m = *metadata(p);
    std::size_t count = 0;
    for (const auto& token : paper_tokens(m)) {
      count += std::binary_search(terms.begin(), terms.end(), token) ? 1 : 0;
    }
    hits.push_back({m.key, m.title, count, std::move(path)});
  }
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.match_count != b.match_count) return a.match_count > b.match_count;
    return a.key < b.key;
  });
  if (hits.size() > limit) {
    hits.resize(limit);
  }
  return hits;
}

}  // namespace eqrank
