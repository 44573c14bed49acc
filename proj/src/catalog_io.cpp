#include "eqrank/catalog_json.hpp"
#include "eqrank/errors.hpp"
#include "tree_json.hpp"

namespace eqrank {

using nlohmann::json;

json to_json(const ThemeId& t) { return {{"level", t.level}, {"index", t.index}}; }

json to_json(std::span<const ThemeId> path) {
  json out = json::array();
  for (const auto& t : path) {
    out.push_back(to_json(t));
  }
  return out;
}

json to_json(const ThemeSummary& s) {
  return {
      {"level", s.theme.level},
      {"index", s.theme.index},
      {"size", s.size},
      {"root_authority_key", s.root_authority_key},
      {"root_hub_key", s.root_hub_key},
      {"parent", s.parent ? to_json(*s.parent) : json(nullptr)},
      {"children", to_json(std::span<const ThemeId>(s.children))},
  };
}

json to_json(std::span<const RankedPaper> ranked) {
  json out = json::array();
  for (const auto& r : ranked) {
    out.push_back({{"key", r.key}, {"score", r.score}});
  }
  return out;
}

json to_json(const SearchHit& hit) {
  return {
      {"key", hit.key},
      {"title", hit.title},
      {"match_count", hit.match_count},
      {"theme_path", to_json(std::span<const ThemeId>(hit.theme_path))},
  };
}

json to_json(std::span<const SearchHit> hits) {
  json out = json::array();
  for (const auto& h : hits) {
    out.push_back(to_json(h));
  }
  return out;
}

namespace {

json ranking_to_json(const std::vector<std::pair<VertexId, std::uint64_t>>& ranked) {
  json out = json::array();
  for (const auto& [p, score] : ranked) {
    out.push_back({p, score});
  }
  return out;
}

std::vector<std::pair<VertexId, std::uint64_t>> ranking_from_json(const json& j,
                                                                  std::size_t papers) {
  std::vector<std::pair<VertexId, std::uint64_t>> out;
  for (const auto& e : j) {
    const auto p = e.at(0).get<VertexId>();
    if (p >= papers) {
      throw FormatError("ranking entry out of range");
    }
    out.emplace_back(p, e.at(1).get<std::uint64_t>());
  }
  return out;
}

}  // namespace

void Catalog::write(std::ostream& out) const {
  json doc;
  doc["kind"] = "eqrank-catalog";
  doc["format_version"] = kFormatVersion;
  doc["ranking_depth"] = ranking_depth_;
  doc["tree"] = detail::tree_to_json(tree_);
  json papers = json::array();
  for (const auto& r : records_) {
    papers.push_back({{"key", r.key},
                      {"title", r.title},
                      {"authors", r.authors},
                      {"tag", std::string(to_string(r.tag))}});
  }
  doc["papers"] = std::move(papers);
  doc["local_authority"] = local_authority_;
  doc["local_hub"] = local_hub_;
  json rankings = json::array();
  for (const auto& level : rankings_) {
    json jl = json::array();
    for (const auto& r : level) {
      jl.push_back({{"authorities", ranking_to_json(r.authorities)},
                    {"hubs", ranking_to_json(r.hubs)}});
    }
    rankings.push_back(std::move(jl));
  }
  doc["rankings"] = std::move(rankings);
  out << doc.dump() << '\n';
  if (!out) {
    throw FormatError("failed to write catalog");
  }
}

Catalog Catalog::read(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("catalog is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("kind", "") != "eqrank-catalog") {
      throw FormatError("not an eqrank catalog");
    }
    const int version = doc.at("format_version").get<int>();
    if (version != kFormatVersion) {
      throw FormatError("catalog format version " + std::to_string(version) +
                        " is not supported (expected " + std::to_string(kFormatVersion) + ")");
    }
    Catalog c;
    c.tree_ = detail::tree_from_json(doc.at("tree"));
    c.ranking_depth_ = doc.at("ranking_depth").get<std::size_t>();
    const std::size_t n = c.tree_.ground_count();

    std::unordered_map<std::string_view, VertexId> ids;
    for (VertexId p = 0; p < n; ++p) {
      ids.emplace(c.tree_.ground_key(p), p);
    }
    c.record_of_.assign(n, -1);
    for (const auto& jp : doc.at("papers")) {
      PaperMetadata m;
      m.key = jp.at("key").get<std::string>();
      m.title = jp.at("title").get<std::string>();
      m.authors = jp.at("authors").get<std::vector<std::string>>();
      const auto tag = parse_tag(jp.at("tag").get<std::string>());
      if (!tag) {
        throw FormatError("unknown tag for paper '" + m.key + "'");
      }
      m.tag = *tag;
      const auto it = ids.find(m.key);
      if (it == ids.end() || c.record_of_[it->second] >= 0) {
        throw FormatError("catalog metadata for unknown or duplicate paper '" + m.key + "'");
      }
      c.record_of_[it->second] = static_cast<std::int64_t>(c.records_.size());
      c.records_.push_back(std::move(m));
    }
    c.local_authority_ = doc.at("local_authority").get<std::vector<VertexId>>();
    c.local_hub_ = doc.at("local_hub").get<std::vector<VertexId>>();
    if (c.local_authority_.size() != n || c.local_hub_.size() != n) {
      throw FormatError("local map length does not match the paper count");
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (c.local_authority_[p] >= n || c.local_hub_[p] >= n) {
        throw FormatError("local map entry out of range");
      }
    }
    const auto& jr = doc.at("rankings");
    if (jr.size() != c.tree_.level_count()) {
      throw FormatError("ranking levels do not match the tree");
    }
    c.rankings_.resize(jr.size());
    for (std::size_t k = 0; k < jr.size(); ++k) {
      if (jr[k].size() != c.tree_.level(static_cast<std::uint32_t>(k + 1)).partition.theme_count()) {
        throw FormatError("ranking count does not match the themes of level " +
                          std::to_string(k + 1));
      }
      for (const auto& jt : jr[k]) {
        c.rankings_[k].push_back({ranking_from_json(jt.at("authorities"), n),
                                  ranking_from_json(jt.at("hubs"), n)});
      }
    }
    c.index();
    return c;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed catalog: ") + e.what());
  }
}

}  // namespace eqrank
