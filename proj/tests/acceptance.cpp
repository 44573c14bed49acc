// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion; exits non-zero on any FAIL.
//
//   AC1 co-citation oracle equivalence      AC5 pipeline determinism
//   AC2 root-resolution oracle equivalence  AC6 scale run (1.0e6 vertices, 6.3e6 edges)
//   AC3 single-level oracle equivalence     AC7 HTTP API contract
//   AC4 hierarchy invariants                AC8 reference dataset (needs EQRANK_SPIRES_EDGES)

#include <httplib.h>
#include <sys/resource.h>
#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "eqrank/catalog.hpp"
#include "eqrank/cocitation.hpp"
#include "eqrank/hierarchy.hpp"
#include "eqrank/oracle.hpp"
#include "eqrank/service.hpp"
#include "eqrank/synth.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace eqrank;
using nlohmann::json;

namespace {

enum class Outcome { pass, fail, skip };

struct Result {
  Outcome outcome = Outcome::pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << s << " s";
  return ss.str();
}

Result fail(std::string why) { return {Outcome::fail, std::move(why)}; }

Result within(double elapsed, double budget, std::string detail) {
  detail += ", " + fmt_seconds(elapsed);
  if (elapsed >= budget) {
    return fail(detail + " exceeds " + fmt_seconds(budget));
  }
  return {Outcome::pass, detail};
}

// 50 random graphs shared by AC3 and AC4.
std::vector<CitationGraph> level_corpus() {
  std::vector<CitationGraph> out;
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 20 + rng() % 281;
    // Expected out-degree between 0.5 and 6 keeps graphs sparse enough to cluster.
    const double p = (0.5 + static_cast<double>(rng() % 1000) / 1000.0 * 5.5) / static_cast<double>(n);
    out.push_back(CitationGraph::from_edges(n, synth::random_digraph(n, p, rng())));
  }
  return out;
}

Result ac1() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  std::uint64_t edges = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng() % 199;
    const double p = 0.05 + static_cast<double>(rng() % 1001) / 1000.0 * 0.15;
    const auto g = CitationGraph::from_edges(n, synth::random_digraph(n, p, rng()));
    const auto wg = weight_all_edges(g);
    const oracle::DenseGraph dense(g);
    for (VertexId a = 0; a < n; ++a) {
      const auto targets = g.out(a);
      for (std::size_t e = 0; e < targets.size(); ++e, ++edges) {
        const auto want = oracle::oracle_cocitation(dense, a, targets[e]);
        if (wg.out_weights(a)[e] != want) {
          return fail("graph " + std::to_string(i) + " edge " + std::to_string(a) + "->" +
                      std::to_string(targets[e]) + ": " + std::to_string(wg.out_weights(a)[e]) +
                      " vs oracle " + std::to_string(want));
        }
      }
    }
  }
  return within(seconds_since(start), 30, "100 graphs, " + std::to_string(edges) + " edges exact");
}

Result ac2() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2);
  std::uint64_t vertices = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 60 + rng() % 9941;
    std::vector<std::size_t> cycles;
    for (int c = 0; c < 5; ++c) cycles.push_back(2 + rng() % 49);
    const auto next = eqrank::testing::random_functional_graph(n, rng(), cycles);
    if (resolve_roots(next) != oracle::naive_roots(next)) {
      return fail("functional graph " + std::to_string(i) + " (n=" + std::to_string(n) + ")");
    }
    vertices += n;
  }
  return within(seconds_since(start), 30,
                "100 functional graphs, " + std::to_string(vertices) + " vertices exact");
}

Result ac3(const std::vector<CitationGraph>& corpus) {
  const auto start = Clock::now();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto got = eqrank_level(corpus[i]);
    const auto want = oracle::naive_level(oracle::DenseGraph(corpus[i]));
    const auto theme_of = got.partition.theme_of();
    bool same = got.local_authority == want.local_authority && got.local_hub == want.local_hub &&
                got.root_authority == want.root_authority && got.root_hub == want.root_hub &&
                std::vector<ThemeIndex>(theme_of.begin(), theme_of.end()) ==
                    want.partition.theme_of &&
                got.partition.theme_count() == want.partition.roots.size();
    for (ThemeIndex t = 0; same && t < got.partition.theme_count(); ++t) {
      same = got.partition.roots(t).root_authority == want.partition.roots[t].first &&
             got.partition.roots(t).root_hub == want.partition.roots[t].second;
    }
    if (!same) return fail("graph " + std::to_string(i) + " differs from the naive pass");
  }
  return within(seconds_since(start), 60, "50 graphs partition-for-partition");
}

// Empty string when the tree is well formed.
std::string hierarchy_violation(const CitationGraph& g, const ClusterTree& tree) {
  if (tree.level_count() == 0) return "no levels";
  std::size_t units = g.vertex_count();
  for (std::uint32_t k = 1; k <= tree.level_count(); ++k) {
    const auto& part = tree.level(k).partition;
    if (part.unit_count() != units) return "level " + std::to_string(k) + " unit count";
    if (k > 1 && part.theme_count() >= units) {
      return "level " + std::to_string(k) + " does not shrink";
    }
    std::vector<int> seen(units, 0);
    for (ThemeIndex t = 0; t < part.theme_count(); ++t) {
      if (part.members(t).empty()) return "empty theme";
      for (auto u : part.members(t)) ++seen[u];
    }
    for (int s : seen) {
      if (s != 1) return "level " + std::to_string(k) + " is not a partition";
    }
    units = part.theme_count();
  }
  std::map<ThemeId, ThemeId> up;
  for (VertexId p = 0; p < g.vertex_count(); ++p) {
    const auto path = tree.theme_path(p);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const auto [it, inserted] = up.emplace(path[k], path[k + 1]);
      if (it->second != path[k + 1]) return "theme " + to_string(path[k]) + " has two parents";
    }
  }
  return {};
}

Result ac4(const std::vector<CitationGraph>& corpus) {
  const auto start = Clock::now();
  std::vector<std::pair<std::string, CitationGraph>> cases;
  for (std::size_t i = 0; i < corpus.size(); ++i) cases.emplace_back("graph " + std::to_string(i), corpus[i]);
  cases.emplace_back("star", eqrank::testing::star(40));
  cases.emplace_back("path", eqrank::testing::path(60));
  cases.emplace_back("complete digraph", eqrank::testing::complete(25));
  cases.emplace_back("pure cycle", eqrank::testing::cycle(50));
  cases.emplace_back("edgeless", eqrank::testing::edgeless(30));
  std::size_t levels = 0;
  for (const auto& [name, g] : cases) {
    const auto tree = run_hierarchy(g);
    if (const auto why = hierarchy_violation(g, tree); !why.empty()) {
      return fail(name + ": " + why);
    }
    levels += tree.level_count();
  }
  return within(seconds_since(start), 60,
                std::to_string(cases.size()) + " graphs, " + std::to_string(levels) +
                    " levels, sizes strictly decreasing and nested");
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(EQRANK_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Result ac5() {
  const auto root = fs::temp_directory_path() / "eqrank_ac5";
  fs::remove_all(root);
  const auto edges = eqrank::testing::data_path("two_camps.tsv");
  const auto meta = eqrank::testing::data_path("two_camps_meta.tsv");
  for (const char* run : {"1", "2"}) {
    const auto dir = root / run;
    fs::create_directories(dir);
    const auto g = (dir / "graph.bin").string();
    const auto t = (dir / "tree.json").string();
    const auto c = (dir / "catalog.json").string();
    if (run_cli("ingest " + edges + " -m " + meta + " -o " + g) != 0 ||
        run_cli("cluster " + g + " --lcc -o " + t) != 0 ||
        run_cli("catalog " + t + " " + g + " " + meta + " -o " + c) != 0) {
      return fail("pipeline run " + std::string(run) + " failed");
    }
  }
  for (const char* name : {"graph.bin", "tree.json", "catalog.json"}) {
    const auto a = eqrank::testing::read_file((root / "1" / name).string());
    const auto b = eqrank::testing::read_file((root / "2" / name).string());
    if (a.empty() || a != b) return fail(std::string(name) + " differs between runs");
  }
  fs::remove_all(root);
  return {Outcome::pass, "graph.bin, tree.json, catalog.json byte-identical"};
}

long peak_rss_kib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

Result ac6() {
  const std::size_t vertices = 1'000'000;
  const std::uint64_t edges = 6'300'000;
  std::string text;
  {
    std::ostringstream out;
    synth::write_edge_list(out, synth::preferential_attachment(vertices, edges, 6));
    text = out.str();
  }
  const auto start = Clock::now();
  std::istringstream in(std::move(text));
  auto ingested = load_edge_list(in);
  text.clear();
  const double t_ingest = seconds_since(start);
  const auto lcc = largest_weak_component(ingested.graph);
  const double t_lcc = seconds_since(start);
  const auto tree = run_hierarchy(lcc.graph);
  const double total = seconds_since(start);
  const double rss_gib = static_cast<double>(peak_rss_kib()) / (1024.0 * 1024.0);

  std::ostringstream detail;
  detail.precision(2);
  detail << std::fixed << ingested.graph.vertex_count() << " vertices, "
         << ingested.graph.edge_count() << " edges; ingest " << t_ingest << " s, lcc "
         << (t_lcc - t_ingest) << " s (" << lcc.graph.vertex_count() << " vertices), cluster "
         << (total - t_lcc) << " s, levels";
  for (auto s : tree.level_sizes()) detail << ' ' << s;
  detail << " (" << to_string(tree.termination_cause()) << "); total " << total
         << " s, peak RSS " << rss_gib << " GiB";
  if (ingested.graph.edge_count() != edges) return fail(detail.str() + ": edge count off");
  if (total >= 600) return fail(detail.str() + ": over 10 minutes");
  if (rss_gib >= 8) return fail(detail.str() + ": over 8 GB");
  return {Outcome::pass, detail.str()};
}

// Minimal structural schema check: every listed field exists with the given JSON type.
bool has_fields(const json& j, const std::vector<std::pair<std::string, json::value_t>>& fields,
                std::string& why) {
  if (!j.is_object()) {
    why = "expected an object";
    return false;
  }
  for (const auto& [name, type] : fields) {
    if (!j.contains(name)) {
      why = "missing '" + name + "'";
      return false;
    }
    const auto t = j.at(name).type();
    const bool ok = t == type ||
                    (type == json::value_t::number_unsigned && t == json::value_t::number_integer) ||
                    (type == json::value_t::object && t == json::value_t::null);
    if (!ok) {
      why = "'" + name + "' has the wrong type";
      return false;
    }
  }
  return true;
}

bool valid_theme_ref(const json& j, std::string& why) {
  return has_fields(j, {{"level", json::value_t::number_unsigned},
                        {"index", json::value_t::number_unsigned}},
                    why);
}

bool valid_summary(const json& j, std::string& why) {
  if (!has_fields(j, {{"level", json::value_t::number_unsigned},
                      {"index", json::value_t::number_unsigned},
                      {"size", json::value_t::number_unsigned},
                      {"root_authority_key", json::value_t::string},
                      {"root_hub_key", json::value_t::string},
                      {"parent", json::value_t::object},
                      {"children", json::value_t::array}},
                  why)) {
    return false;
  }
  if (!j["parent"].is_null() && !valid_theme_ref(j["parent"], why)) return false;
  for (const auto& c : j["children"]) {
    if (!valid_theme_ref(c, why)) return false;
  }
  return true;
}

bool valid_ranked(const json& j, std::string& why) {
  if (!j.is_array()) {
    why = "ranking is not an array";
    return false;
  }
  for (const auto& e : j) {
    if (!has_fields(e, {{"key", json::value_t::string}, {"score", json::value_t::number_unsigned}},
                    why)) {
      return false;
    }
  }
  return true;
}

Result ac7() {
  const auto start = Clock::now();
  const auto graph = eqrank::testing::two_camps();
  const auto meta = eqrank::testing::two_camps_metadata();
  const auto tree = run_hierarchy(graph);
  auto catalog = std::make_shared<const Catalog>(Catalog::build(tree, weight_all_edges(graph), meta));
  auto api = std::make_shared<const service::Api>(catalog, service::ApiConfig{});
  service::Server server(api);
  const int port = server.bind("127.0.0.1", 0);
  std::thread worker([&] { server.run(); });
  struct Stop {
    service::Server& s;
    std::thread& t;
    ~Stop() {
      s.stop();
      t.join();
    }
  } stop{server, worker};

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  auto get = [&](const std::string& path, int status, json& body, std::string& why) {
    httplib::Result r;
    for (int attempt = 0; attempt < 50 && !(r = client.Get(path)); ++attempt) {
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    if (!r) {
      why = path + ": no response";
      return false;
    }
    if (r->status != status) {
      why = path + ": status " + std::to_string(r->status) + ", expected " + std::to_string(status);
      return false;
    }
    try {
      body = json::parse(r->body);
    } catch (const json::parse_error&) {
      why = path + ": body is not JSON";
      return false;
    }
    return true;
  };

  std::string why;
  json body;
  std::size_t requests = 0;
  auto check = [&](bool ok, const std::string& path) {
    ++requests;
    if (!ok && why.find(path) == std::string::npos) why = path + ": " + why;
    return ok;
  };

  // Tree.
  if (!check(get("/api/tree", 200, body, why), "/api/tree")) return fail(why);
  if (!body.is_array() || body.size() != tree.level_count()) return fail("/api/tree: level count");
  for (const auto& level : body) {
    if (!has_fields(level, {{"level", json::value_t::number_unsigned}, {"themes", json::value_t::array}}, why)) {
      return fail("/api/tree: " + why);
    }
    for (const auto& s : level["themes"]) {
      if (!valid_summary(s, why)) return fail("/api/tree: " + why);
    }
  }
  // Themes.
  for (std::uint32_t k = 1; k <= tree.level_count(); ++k) {
    for (ThemeIndex t = 0; t < tree.level(k).partition.theme_count(); ++t) {
      const auto path = "/api/themes/" + std::to_string(k) + "/" + std::to_string(t);
      if (!check(get(path, 200, body, why), path)) return fail(why);
      if (!valid_summary(body, why) || !valid_ranked(body["authorities"], why) ||
          !valid_ranked(body["hubs"], why) ||
          !has_fields(body["members"], {{"offset", json::value_t::number_unsigned},
                                        {"limit", json::value_t::number_unsigned},
                                        {"total", json::value_t::number_unsigned},
                                        {"items", json::value_t::array}},
                      why)) {
        return fail(path + ": " + why);
      }
      if (body["members"]["total"] != catalog->members({k, t}).size()) {
        return fail(path + ": member total");
      }
    }
  }
  // Papers.
  for (const auto& key : tree.ground_keys()) {
    const auto path = "/api/papers/" + key;
    if (!check(get(path, 200, body, why), path)) return fail(why);
    if (!has_fields(body, {{"key", json::value_t::string},
                           {"title", json::value_t::string},
                           {"authors", json::value_t::array},
                           {"tag", json::value_t::string},
                           {"theme_path", json::value_t::array},
                           {"local_authority", json::value_t::string},
                           {"local_hub", json::value_t::string},
                           {"root_authority", json::value_t::string},
                           {"root_hub", json::value_t::string}},
                    why)) {
      return fail(path + ": " + why);
    }
    if (body["theme_path"].size() != tree.level_count()) return fail(path + ": theme path length");
  }
  // Search, against the linear-scan oracle.
  const std::vector<std::pair<std::string, std::optional<ThemeId>>> queries = {
      {"lattice", std::nullopt},      {"common author", std::nullopt},
      {"author b3", std::nullopt},    {"supersymmetric string", ThemeId{1, 1}},
      {"gauge", ThemeId{1, 1}},       {"part 2", ThemeId{2, 0}},
      {"no such words", std::nullopt}};
  for (const auto& [q, filter] : queries) {
    std::string path = "/api/search?q=" + httplib::detail::encode_query_param(q) + "&limit=5";
    if (filter) path += "&theme=" + std::to_string(filter->level) + ":" + std::to_string(filter->index);
    if (!check(get(path, 200, body, why), path)) return fail(why);
    const auto want = oracle::naive_search(meta, tree, q, filter, 5);
    if (!body.is_array() || body.size() != want.size()) return fail(path + ": hit count");
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (!has_fields(body[i], {{"key", json::value_t::string},
                                {"title", json::value_t::string},
                                {"match_count", json::value_t::number_unsigned},
                                {"theme_path", json::value_t::array}},
                      why)) {
        return fail(path + ": " + why);
      }
      if (body[i]["key"] != want[i].key || body[i]["match_count"] != want[i].match_count) {
        return fail(path + ": hit " + std::to_string(i) + " differs from the oracle");
      }
    }
  }
  // Unknown entities.
  for (const std::string path : {"/api/papers/nope", "/api/themes/1/99", "/api/themes/9/0",
                                 "/api/search?q=x&theme=9:0", "/api/nothing"}) {
    if (!check(get(path, 404, body, why), path)) return fail(why);
    if (!body.contains("error")) return fail(path + ": no error message");
  }
  return within(seconds_since(start), 10,
                std::to_string(requests) + " requests over HTTP, schemas valid, search equals oracle");
}

Result ac8() {
  const char* edges_path = std::getenv("EQRANK_SPIRES_EDGES");
  if (edges_path == nullptr || *edges_path == '\0') {
    return {Outcome::skip, "set EQRANK_SPIRES_EDGES to a SPIRES edge list to run"};
  }
  std::ifstream in(edges_path);
  if (!in) return fail(std::string("cannot open ") + edges_path);
  const auto ingested = load_edge_list(in);
  const auto lcc = largest_weak_component(ingested.graph);
  const auto tree = run_hierarchy(lcc.graph);
  std::ostringstream detail;
  detail << "lcc " << lcc.graph.vertex_count() << " (expected 822622); levels";
  const std::vector<long> reference{885, 254, 52, 6};
  const auto sizes = tree.level_sizes();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    detail << ' ' << sizes[i];
    if (i < reference.size()) {
      detail << " (" << std::showpos << static_cast<long>(sizes[i]) - reference[i] << std::noshowpos << ")";
    }
  }
  detail << " vs indicative 885/254/52/6";
  if (lcc.graph.vertex_count() != 822622) return fail(detail.str());
  return {Outcome::pass, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  // Optional filter: run only the named criteria, e.g. `acceptance AC1 AC7`.
  std::vector<std::string> only(argv + 1, argv + argc);
  auto wanted = [&](const std::string& id) {
    return only.empty() || std::find(only.begin(), only.end(), id) != only.end();
  };

  std::vector<CitationGraph> corpus;
  auto corpus_ref = [&]() -> const std::vector<CitationGraph>& {
    if (corpus.empty()) corpus = level_corpus();
    return corpus;
  };
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"AC1 co-citation oracle equivalence", ac1},
      {"AC2 root-resolution oracle equivalence", ac2},
      {"AC3 end-to-end level oracle", [&] { return ac3(corpus_ref()); }},
      {"AC4 hierarchy invariants", [&] { return ac4(corpus_ref()); }},
      {"AC5 pipeline determinism", ac5},
      {"AC6 scale run", ac6},
      {"AC7 API contract", ac7},
      {"AC8 reference dataset", ac8},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    if (!wanted(name.substr(0, 3))) continue;
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = fail(std::string("exception: ") + e.what());
    }
    const char* tag = r.outcome == Outcome::pass ? "PASS" : r.outcome == Outcome::fail ? "FAIL" : "SKIP";
    std::cout << tag << "  " << name << ": " << r.detail << std::endl;
    failures += r.outcome == Outcome::fail ? 1 : 0;
  }
  return failures == 0 ? 0 : 1;
}
