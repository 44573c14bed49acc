#include <algorithm>
#include <limits>

#include <json.hpp>

#include "eqrank/errors.hpp"
#include "eqrank/hierarchy.hpp"
#include "eqrank/snapshot.hpp"
#include "tree_json.hpp"

namespace eqrank {

using nlohmann::json;

namespace {

std::uint64_t parse_hex(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 16);
    if (used != s.size()) {
      throw FormatError("bad fingerprint '" + s + "'");
    }
    return v;
  } catch (const std::logic_error&) {
    throw FormatError("bad fingerprint '" + s + "'");
  }
}

}  // namespace

namespace detail {

json tree_to_json(const ClusterTree& tree) {
  json doc;
  doc["format_version"] = kTreeFormatVersion;
  doc["graph_fingerprint"] = fingerprint_hex(tree.graph_fingerprint());
  doc["termination_cause"] = std::string(to_string(tree.termination_cause()));
  doc["ground_keys"] = tree.ground_keys();
  json levels = json::array();
  for (std::uint32_t k = 1; k <= tree.level_count(); ++k) {
    const TreeLevel& level = tree.level(k);
    const Partition& part = level.partition;
    json themes = json::array();
    for (ThemeIndex t = 0; t < part.theme_count(); ++t) {
      const auto members = part.members(t);
      themes.push_back({
          {"index", t},
          {"root_authority", part.roots(t).root_authority},
          {"root_hub", part.roots(t).root_hub},
          {"root_authority_key", tree.ground_key(level.root_authority_paper[t])},
          {"root_hub_key", tree.ground_key(level.root_hub_paper[t])},
          {"parent_index", level.parent.empty() ? json(nullptr) : json(level.parent[t])},
          {"member_indices", std::vector<VertexId>(members.begin(), members.end())},
      });
    }
    levels.push_back({
        {"level", k},
        {"unit_count", part.unit_count()},
        {"diagnostics",
         {{"unit_count", level.diagnostics.unit_count},
          {"edge_count", level.diagnostics.edge_count},
          {"zero_weight_authority_picks", level.diagnostics.zero_weight_authority_picks},
          {"zero_weight_hub_picks", level.diagnostics.zero_weight_hub_picks}}},
        {"themes", std::move(themes)},
    });
  }
  doc["levels"] = std::move(levels);
  return doc;
}

ClusterTree tree_from_json(const json& doc) {
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kTreeFormatVersion) {
      throw FormatError("cluster tree format version " + std::to_string(version) +
                        " is not supported (expected " + std::to_string(kTreeFormatVersion) +
                        ")");
    }
    auto keys = doc.at("ground_keys").get<std::vector<std::string>>();
    const auto cause = parse_termination_cause(doc.at("termination_cause").get<std::string>());
    if (!cause) {
      throw FormatError("unknown termination cause");
    }
    const std::uint64_t fp = parse_hex(doc.at("graph_fingerprint").get<std::string>());

    std::vector<TreeLevel> levels;
    std::size_t units = keys.size();
    for (const auto& jl : doc.at("levels")) {
      if (jl.at("unit_count").get<std::size_t>() != units) {
        throw FormatError("level unit count does not match the level below");
      }
      const auto& jthemes = jl.at("themes");
      constexpr ThemeIndex kUnset = std::numeric_limits<ThemeIndex>::max();
      std::vector<ThemeIndex> theme_of(units, kUnset);
      std::vector<ThemeRoots> roots;
      for (const auto& jt : jthemes) {
        const auto t = jt.at("index").get<ThemeIndex>();
        if (t != roots.size()) {
          throw FormatError("theme indices are not dense");
        }
        roots.push_back({jt.at("root_authority").get<VertexId>(), jt.at("root_hub").get<VertexId>()});
        if (roots.back().root_authority >= units || roots.back().root_hub >= units) {
          throw FormatError("theme root out of range");
        }
        for (const auto& jm : jt.at("member_indices")) {
          const auto m = jm.get<VertexId>();
          if (m >= units || theme_of[m] != kUnset) {
            throw FormatError("theme members overlap or are out of range");
          }
          theme_of[m] = t;
        }
      }
      if (std::find(theme_of.begin(), theme_of.end(), kUnset) != theme_of.end()) {
        throw FormatError("themes do not cover every unit");
      }
      TreeLevel level;
      level.partition = Partition(std::move(theme_of), std::move(roots));
      const auto& jd = jl.at("diagnostics");
      level.diagnostics = {jd.at("unit_count").get<std::uint64_t>(),
                           jd.at("edge_count").get<std::uint64_t>(),
                           jd.at("zero_weight_authority_picks").get<std::uint64_t>(),
                           jd.at("zero_weight_hub_picks").get<std::uint64_t>()};
      units = level.partition.theme_count();
      levels.push_back(std::move(level));
    }
    ClusterTree tree(std::move(keys), std::move(levels), *cause, fp);

    // Derived fields must agree with what the constructor recomputed.
    for (std::uint32_t k = 1; k <= tree.level_count(); ++k) {
      const auto& jthemes = doc.at("levels")[k - 1].at("themes");
      const TreeLevel& level = tree.level(k);
      for (ThemeIndex t = 0; t < level.partition.theme_count(); ++t) {
        const auto& jt = jthemes[t];
        const auto& parent = jt.at("parent_index");
        const bool parent_ok =
            level.parent.empty() ? parent.is_null()
                                 : (!parent.is_null() && parent.get<ThemeIndex>() == level.parent[t]);
        if (!parent_ok ||
            jt.at("root_authority_key").get<std::string>() !=
                tree.ground_key(level.root_authority_paper[t]) ||
            jt.at("root_hub_key").get<std::string>() != tree.ground_key(level.root_hub_paper[t])) {
          throw FormatError("inconsistent derived fields in theme " +
                            to_string(ThemeId{k, t}));
        }
      }
    }
    return tree;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed cluster tree: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("malformed cluster tree: ") + e.what());
  }
}

}  // namespace detail

void write_tree_json(std::ostream& out, const ClusterTree& tree) {
  out << detail::tree_to_json(tree).dump() << '\n';
  if (!out) {
    throw FormatError("failed to write cluster tree");
  }
}

ClusterTree read_tree_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("cluster tree is not valid JSON: ") + e.what());
  }
  return detail::tree_from_json(doc);
}

void write_partition_dump(std::ostream& out, const ClusterTree& tree) {
  for (VertexId p = 0; p < tree.ground_count(); ++p) {
    for (const ThemeId& t : tree.theme_path(p)) {
      const TreeLevel& level = tree.level(t.level);
      out << tree.ground_key(p) << '\t' << t.level << '\t' << t.index << '\t'
          << tree.ground_key(level.root_authority_paper[t.index]) << '\t'
          << tree.ground_key(level.root_hub_paper[t.index]) << '\n';
    }
  }
}

}  // namespace eqrank
