#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eqrank/cocitation.hpp"
#include "eqrank/hierarchy.hpp"
#include "eqrank/metadata.hpp"
#include "eqrank/types.hpp"

namespace eqrank {

struct RankedPaper {
  std::string key;
  std::uint64_t score = 0;

  friend bool operator==(const RankedPaper&, const RankedPaper&) = default;
};

struct ThemeSummary {
  ThemeId theme;
  /// Number of papers under the theme.
  std::uint64_t size = 0;
  std::string root_authority_key;
  std::string root_hub_key;
  std::optional<ThemeId> parent;
  /// Themes of the level below; empty on level 1 (its children are papers).
  std::vector<ThemeId> children;
};

struct HubAuthorityList {
  ThemeId theme;
  std::vector<RankedPaper> authorities;
  std::vector<RankedPaper> hubs;
};

struct SearchHit {
  std::string key;
  std::string title;
  /// Title and author tokens equal to some query token, counted with multiplicity.
  std::size_t match_count = 0;
  std::vector<ThemeId> theme_path;
};

struct CatalogOptions {
  /// How many entries of each hub/authority ranking are kept.
  std::size_t ranking_depth = 1000;
};

/// Lowercased alphanumeric runs; bytes >= 0x80 count as word characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

/**
 * Cluster tree joined with paper metadata, a token index, and per-theme hub/authority
 * rankings. Immutable once built.
 *
 * Authority score of paper x in theme T: sum of co-citation weights of edges m -> x with
 * m a paper of T. Hub score: sum over edges x -> m with m in T. Candidates are the papers
 * of T plus T's root authority (root hub, for hubs), which is always listed.
 */
class Catalog {
 public:
  inline static constexpr int kFormatVersion = 1;

  /// `wg` must be weighted over the tree's ground graph (same vertices, same order).
  /// Metadata for keys that are not in the tree is skipped and reported in `warnings`.
  static Catalog build(const ClusterTree& tree, const WeightedGraph& wg,
                       const MetadataTable& metadata, const CatalogOptions& options = {},
                       std::vector<std::string>* warnings = nullptr);

  const ClusterTree& tree() const noexcept { return tree_; }
  std::size_t paper_count() const noexcept { return tree_.ground_count(); }
  std::size_t searchable_count() const noexcept { return searchable_; }
  std::size_t ranking_depth() const noexcept { return ranking_depth_; }

  std::optional<VertexId> find_paper(std::string_view key) const;
  const std::string& key(VertexId p) const { return tree_.ground_key(p); }
  /// nullptr when the paper has no metadata.
  const PaperMetadata* metadata(VertexId p) const;
  std::vector<ThemeId> theme_path(VertexId p) const { return tree_.theme_path(p); }

  VertexId local_authority(VertexId p) const { return local_authority_.at(p); }
  VertexId local_hub(VertexId p) const { return local_hub_.at(p); }
  VertexId root_authority(VertexId p) const;
  VertexId root_hub(VertexId p) const;

  /// Throws LookupError for an unknown theme or level.
  const ThemeSummary& summary(const ThemeId& theme) const;
  std::span<const ThemeSummary> summaries(std::uint32_t level) const;
  /// Papers under the theme, by increasing internal id.
  std::span<const VertexId> members(const ThemeId& theme) const;

  std::vector<RankedPaper> theme_authorities(const ThemeId& theme, std::size_t limit) const;
  std::vector<RankedPaper> theme_hubs(const ThemeId& theme, std::size_t limit) const;
  HubAuthorityList hub_authority_list(const ThemeId& theme, std::size_t limit) const;

  /// Case-insensitive AND search over title and author tokens, ordered by match count
  /// (descending) then key. An empty query yields nothing.
  std::vector<SearchHit> search(std::string_view query, std::optional<ThemeId> theme_filter,
                                std::size_t limit) const;

  /// Catalog snapshot (JSON, see docs/formats.md).
  void write(std::ostream& out) const;
  static Catalog read(std::istream& in);

 private:
  struct Ranking {
    std::vector<std::pair<VertexId, std::uint64_t>> authorities;
    std::vector<std::pair<VertexId, std::uint64_t>> hubs;
  };

  Catalog() = default;
  void index();
  void check_theme(const ThemeId& theme) const;
  std::vector<RankedPaper> top(const std::vector<std::pair<VertexId, std::uint64_t>>& ranked,
                               VertexId root, std::size_t limit) const;

  ClusterTree tree_;
  std::size_t ranking_depth_ = 0;
  std::vector<PaperMetadata> records_;
  /// Index into records_ per paper, or -1.
  std::vector<std::int64_t> record_of_;
  std::vector<VertexId> local_authority_;
  std::vector<VertexId> local_hub_;
  /// rankings_[level - 1][theme]
  std::vector<std::vector<Ranking>> rankings_;

  // Derived on build and on load.
  std::unordered_map<std::string, VertexId> key_index_;
  std::unordered_map<std::string, std::vector<VertexId>> token_index_;
  std::vector<std::vector<ThemeSummary>> summaries_;
  /// Per level: CSR of papers per theme.
  std::vector<std::vector<std::uint64_t>> member_offsets_;
  std::vector<std::vector<VertexId>> members_;
  std::size_t searchable_ = 0;
};

}  // namespace eqrank
