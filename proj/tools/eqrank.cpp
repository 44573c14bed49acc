// eqrank: offline pipeline driver.
//
//   eqrank ingest edges.tsv [-m metadata.tsv] -o graph.bin
//   eqrank stats graph.bin [-m metadata.tsv] [--lcc]
//   eqrank cluster graph.bin [--lcc] [--max-levels N] -o tree.json
//   eqrank catalog tree.json graph.bin [metadata.tsv] -o catalog.json
//   eqrank serve [catalog.json] [--addr host:port]
//   eqrank verify graph.bin
//
// Exit codes: 0 ok, 1 usage, 2 data error. Diagnostics go to stderr.

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "eqrank/catalog.hpp"
#include "eqrank/errors.hpp"
#include "eqrank/graph.hpp"
#include "eqrank/hierarchy.hpp"
#include "eqrank/metadata.hpp"
#include "eqrank/service.hpp"
#include "eqrank/snapshot.hpp"
#include "eqrank/verify.hpp"

namespace {

using namespace eqrank;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open '" + path + "'");
  }
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FormatError("cannot create '" + path + "'");
  }
  return out;
}

MetadataTable load_metadata_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return load_metadata(in);
  } catch (const ParseError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void print_stats(const GraphStats& s, bool as_json) {
  if (as_json) {
    json j = {{"vertex_count", s.vertex_count}, {"edge_count", s.edge_count}};
    j["raw_edge_count"] = s.raw_edge_count ? json(*s.raw_edge_count) : json(nullptr);
    j["tagged_vertex_counts"] = s.tagged_vertex_counts;
    j["lcc_vertex_count"] = s.lcc_vertex_count ? json(*s.lcc_vertex_count) : json(nullptr);
    std::cout << j.dump() << '\n';
    return;
  }
  std::cout << s.vertex_count << " vertices, " << s.edge_count << " edges\n";
  if (s.raw_edge_count) {
    std::cout << "raw edge records: " << *s.raw_edge_count << '\n';
  }
  for (const auto& [tag, count] : s.tagged_vertex_counts) {
    std::cout << "  " << tag << ": " << count << '\n';
  }
  if (s.lcc_vertex_count) {
    std::cout << "largest weak component: " << *s.lcc_vertex_count << " vertices\n";
  }
}

struct Options {
  int threads = 0;

  std::string edges_path;
  std::string graph_path;
  std::string tree_path;
  std::string metadata_path;
  std::string output_path;
  std::string catalog_path;
  bool json_stats = false;
  bool lcc = false;
  int max_levels = kDefaultMaxLevels;
  std::string dump_partition;
  std::string dump_weights;
  std::size_t ranking_depth = CatalogOptions{}.ranking_depth;
  std::string address;
  std::size_t cap = 100;
  std::string cors_origin = "*";
  std::string port_file;
  VerifyOptions verify;
};

int cmd_ingest(const Options& o) {
  auto in = open_input(o.edges_path);
  IngestResult result;
  try {
    result = load_edge_list(in);
  } catch (const ParseError& e) {
    std::cerr << "eqrank ingest: " << o.edges_path << ": " << e.what() << '\n';
    return kExitData;
  }
  std::optional<MetadataTable> meta;
  if (!o.metadata_path.empty()) {
    meta = load_metadata_file(o.metadata_path);
  }
  write_snapshot_file(o.output_path, result.graph);
  const auto& r = result.report;
  std::cerr << "ingest: " << r.edge_records << " edge records, " << r.duplicates_collapsed
            << " duplicates collapsed, " << r.self_loops_dropped << " self-loops dropped\n";
  print_stats(stats(result.graph, meta ? &*meta : nullptr), o.json_stats);
  return kExitOk;
}

int cmd_stats(const Options& o) {
  const CitationGraph g = read_snapshot_file(o.graph_path);
  std::optional<MetadataTable> meta;
  if (!o.metadata_path.empty()) {
    meta = load_metadata_file(o.metadata_path);
  }
  GraphStats s = stats(g, meta ? &*meta : nullptr);
  if (o.lcc && !g.empty()) {
    s.lcc_vertex_count = largest_weak_component(g).graph.vertex_count();
  }
  print_stats(s, o.json_stats);
  return kExitOk;
}

int cmd_cluster(const Options& o) {
  const CitationGraph g = read_snapshot_file(o.graph_path);
  if (g.empty()) {
    std::cerr << "eqrank cluster: graph is empty\n";
    return kExitData;
  }
  std::optional<ComponentResult> component;
  if (o.lcc) {
    component = largest_weak_component(g);
    std::cerr << "largest weak component: " << component->graph.vertex_count() << " of "
              << g.vertex_count() << " vertices\n";
  }
  const CitationGraph& ground = component ? component->graph : g;
  ClusterTree tree = run_hierarchy(ground, o.max_levels);
  tree.set_graph_fingerprint(fingerprint(g));

  for (std::uint32_t k = 1; k <= tree.level_count(); ++k) {
    const auto& d = tree.level(k).diagnostics;
    std::cout << "level " << k << ": " << tree.level(k).partition.theme_count() << " themes\n";
    std::cerr << "  level " << k << ": " << d.unit_count << " units, " << d.edge_count
              << " edges, zero-weight picks: " << d.zero_weight_authority_picks
              << " authority / " << d.zero_weight_hub_picks << " hub\n";
  }
  std::cout << "termination: " << to_string(tree.termination_cause()) << '\n';

  auto out = open_output(o.output_path);
  write_tree_json(out, tree);
  if (!o.dump_partition.empty()) {
    auto dump = open_output(o.dump_partition);
    write_partition_dump(dump, tree);
  }
  if (!o.dump_weights.empty()) {
    auto dump = open_output(o.dump_weights);
    write_weight_dump(dump, weight_all_edges(ground));
  }
  return kExitOk;
}

int cmd_catalog(const Options& o) {
  auto tree_in = open_input(o.tree_path);
  const ClusterTree tree = read_tree_json(tree_in);
  const CitationGraph g = read_snapshot_file(o.graph_path);
  const auto graph_fp = fingerprint(g);
  if (tree.graph_fingerprint() != graph_fp) {
    std::cerr << "eqrank catalog: artifact version mismatch: " << o.tree_path
              << " was built from graph " << fingerprint_hex(tree.graph_fingerprint()) << ", "
              << o.graph_path << " is graph " << fingerprint_hex(graph_fp) << '\n';
    return kExitData;
  }
  std::vector<VertexId> ids;
  ids.reserve(tree.ground_count());
  for (const auto& key : tree.ground_keys()) {
    const auto id = g.find(key);
    if (!id || (!ids.empty() && ids.back() >= *id)) {
      throw FormatError("tree papers do not form an ordered subset of the graph");
    }
    ids.push_back(*id);
  }
  std::optional<CitationGraph> induced;
  if (ids.size() != g.vertex_count()) {
    induced = induced_subgraph(g, ids);
  }
  const CitationGraph& ground = induced ? *induced : g;

  MetadataTable meta;
  if (!o.metadata_path.empty()) {
    meta = load_metadata_file(o.metadata_path);
  }
  std::vector<std::string> warnings;
  const Catalog catalog = Catalog::build(tree, weight_all_edges(ground), meta,
                                         CatalogOptions{o.ranking_depth}, &warnings);
  for (const auto& w : warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  auto out = open_output(o.output_path);
  catalog.write(out);
  std::cout << "catalog: " << catalog.paper_count() << " papers (" << catalog.searchable_count()
            << " searchable), " << tree.level_count() << " levels\n";
  return kExitOk;
}

int cmd_serve(const Options& o) {
  service::ApiConfig config;
  if (const char* addr = std::getenv("EQRANK_ADDR")) {
    service::apply_address(config, addr);
  }
  if (const char* path = std::getenv("EQRANK_CATALOG")) {
    config.catalog_path = path;
  }
  if (!o.address.empty()) {
    service::apply_address(config, o.address);
  }
  if (!o.catalog_path.empty()) {
    config.catalog_path = o.catalog_path;
  }
  config.result_cap = o.cap;
  config.cors_origin = o.cors_origin;
  try {
    config.validate();
  } catch (const DomainError& e) {
    std::cerr << "eqrank serve: " << e.what() << '\n';
    return kExitUsage;
  }
  if (config.catalog_path.empty()) {
    std::cerr << "eqrank serve: no catalog given (argument or EQRANK_CATALOG)\n";
    return kExitUsage;
  }
  auto in = open_input(config.catalog_path);
  auto catalog = std::make_shared<const Catalog>(Catalog::read(in));
  auto api = std::make_shared<const service::Api>(catalog, config);
  service::Server server(api);
  const int port = server.bind(config.host, config.port);
  if (!o.port_file.empty()) {
    open_output(o.port_file) << port << '\n';
  }
  std::cerr << "serving " << config.catalog_path << " on http://" << config.host << ':' << port
            << '\n';
  server.run();
  return kExitOk;
}

int cmd_verify(const Options& o) {
  auto in = open_input(o.graph_path);
  const VerifyReport report = verify_snapshot(in, o.verify);
  for (const auto& check : report.checks) {
    if (check.passed) {
      std::cout << "ok      " << check.name << " (" << check.detail << ")\n";
    } else {
      std::cout << "FAILED: " << check.name << ": " << check.detail << '\n';
    }
  }
  if (report.passed()) {
    std::cout << "all checks passed\n";
    return kExitOk;
  }
  return kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EqRank hierarchical clustering of citation graphs"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);

  auto* ingest = app.add_subcommand("ingest", "Load an edge list into a graph snapshot");
  ingest->add_option("edges", o.edges_path, "Edge list (citing<TAB>cited)")->required();
  ingest->add_option("-m,--metadata", o.metadata_path, "Paper metadata for tagged counts");
  ingest->add_option("-o,--output", o.output_path, "Graph snapshot to write")->required();
  ingest->add_flag("--json", o.json_stats, "Print stats as JSON");

  auto* stats_cmd = app.add_subcommand("stats", "Report graph statistics");
  stats_cmd->add_option("graph", o.graph_path, "Graph snapshot")->required();
  stats_cmd->add_option("-m,--metadata", o.metadata_path, "Paper metadata for tagged counts");
  stats_cmd->add_flag("--lcc", o.lcc, "Also report the largest weak component size");
  stats_cmd->add_flag("--json", o.json_stats, "Print stats as JSON");

  auto* cluster = app.add_subcommand("cluster", "Build the cluster tree");
  cluster->add_option("graph", o.graph_path, "Graph snapshot")->required();
  cluster->add_flag("--lcc", o.lcc, "Restrict to the largest weakly connected component");
  cluster->add_option("--max-levels", o.max_levels, "Level cap")
      ->check(CLI::PositiveNumber);
  cluster->add_option("-o,--output", o.output_path, "Cluster tree JSON to write")->required();
  cluster->add_option("--dump-partition", o.dump_partition, "Write per-paper theme table");
  cluster->add_option("--dump-weights", o.dump_weights, "Write co-citation weight per edge");

  auto* catalog = app.add_subcommand("catalog", "Build the browsing/search catalog");
  catalog->add_option("tree", o.tree_path, "Cluster tree JSON")->required();
  catalog->add_option("graph", o.graph_path, "Graph snapshot the tree was built from")
      ->required();
  catalog->add_option("metadata", o.metadata_path, "Paper metadata (optional)");
  catalog->add_option("-o,--output", o.output_path, "Catalog snapshot to write")->required();
  catalog->add_option("--ranking-depth", o.ranking_depth, "Entries kept per hub/authority list")
      ->check(CLI::PositiveNumber);

  auto* serve = app.add_subcommand("serve", "Serve a catalog over HTTP");
  serve->add_option("catalog", o.catalog_path, "Catalog snapshot (or EQRANK_CATALOG)");
  serve->add_option("--addr", o.address, "host:port to listen on (or EQRANK_ADDR)");
  serve->add_option("--cap", o.cap, "Maximum list length per response")
      ->check(CLI::PositiveNumber);
  serve->add_option("--cors-origin", o.cors_origin, "Access-Control-Allow-Origin value");
  serve->add_option("--port-file", o.port_file, "Write the bound port here");

  auto* verify = app.add_subcommand("verify", "Run integrity and oracle checks on a snapshot");
  verify->add_option("graph", o.graph_path, "Graph snapshot")->required();
  verify->add_option("--samples", o.verify.samples, "Neighbourhoods to check");
  verify->add_option("--sample-size", o.verify.sample_size, "Vertices per neighbourhood")
      ->check(CLI::Range(2, 400));
  verify->add_option("--edge-checks", o.verify.edge_checks,
                     "Full-graph edges checked against the co-citation oracle");
  verify->add_option("--seed", o.verify.seed, "Sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (o.threads > 0) {
    omp_set_num_threads(o.threads);
  }

  try {
    if (*ingest) return cmd_ingest(o);
    if (*stats_cmd) return cmd_stats(o);
    if (*cluster) return cmd_cluster(o);
    if (*catalog) return cmd_catalog(o);
    if (*serve) return cmd_serve(o);
    if (*verify) return cmd_verify(o);
  } catch (const eqrank::Error& e) {
    std::cerr << "eqrank: " << e.what() << '\n';
    return kExitData;
  } catch (const std::bad_alloc&) {
    std::cerr << "eqrank: out of memory\n";
    return kExitData;
  }
  return kExitUsage;
}
