#include "eqrank/verify.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "eqrank/cocitation.hpp"
#include "eqrank/errors.hpp"
#include "eqrank/hierarchy.hpp"
#include "eqrank/level.hpp"
#include "eqrank/oracle.hpp"
#include "eqrank/snapshot.hpp"

namespace eqrank {

namespace {

std::string count_detail(std::uint64_t n, const char* what) {
  return std::to_string(n) + " " + what;
}

// Grows a connected-ish vertex set from a random seed along in and out edges.
std::vector<VertexId> sample_neighbourhood(const CitationGraph& g, std::size_t size,
                                           std::mt19937_64& rng) {
  const std::size_t n = g.vertex_count();
  std::unordered_set<VertexId> chosen;
  std::vector<VertexId> frontier;
  std::uniform_int_distribution<VertexId> any(0, static_cast<VertexId>(n - 1));
  while (chosen.size() < std::min(size, n)) {
    if (frontier.empty()) {
      const VertexId s = any(rng);
      if (chosen.insert(s).second) frontier.push_back(s);
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
    const std::size_t i = pick(rng);
    const VertexId v = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    for (auto list : {g.out(v), g.in(v)}) {
      for (VertexId u : list) {
        if (chosen.size() >= size) break;
        if (chosen.insert(u).second) frontier.push_back(u);
      }
    }
  }
  std::vector<VertexId> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct Tally {
  std::uint64_t checked = 0;
  std::string failure;

  void fail(std::string what) {
    if (failure.empty()) failure = std::move(what);
  }
  VerifyCheck check(std::string name, const char* unit) const {
    return {std::move(name), failure.empty(),
            failure.empty() ? count_detail(checked, unit) : failure};
  }
};

}  // namespace

VerifyReport verify_snapshot(std::istream& in, const VerifyOptions& options) {
  VerifyReport report;
  RawSnapshot raw;
  try {
    raw = read_raw_snapshot(in);
  } catch (const FormatError& e) {
    report.checks.push_back({"checksum", false, e.what()});
    return report;
  }
  report.checks.push_back({"checksum", raw.stored_checksum == raw.computed_checksum,
                           "stored " + fingerprint_hex(raw.stored_checksum) + ", computed " +
                               fingerprint_hex(raw.computed_checksum)});

  const std::size_t n = raw.out_offsets.empty() ? 0 : raw.out_offsets.size() - 1;
  const auto& off = raw.out_offsets;
  const auto& tgt = raw.out_targets;
  {
    Tally t;
    if (off.empty() || off.front() != 0 || off.back() != tgt.size()) {
      t.fail("offsets do not span the target array");
    }
    for (std::size_t p = 0; p < n && t.failure.empty(); ++p) {
      if (off[p] > off[p + 1]) t.fail("offsets decrease at vertex " + std::to_string(p));
    }
    for (std::size_t e = 0; e < tgt.size() && t.failure.empty(); ++e) {
      if (tgt[e] >= n) t.fail("target out of range at edge " + std::to_string(e));
    }
    t.checked = tgt.size();
    report.checks.push_back(t.check("csr-structure", "edges"));
    if (!t.failure.empty()) return report;
  }
  {
    Tally sorted;
    Tally loops;
    for (std::size_t p = 0; p < n; ++p) {
      for (auto e = off[p]; e < off[p + 1]; ++e) {
        if (e > off[p] && tgt[e - 1] >= tgt[e]) {
          sorted.fail("out-list of vertex " + std::to_string(p) + " not strictly increasing");
        }
        if (tgt[e] == p) loops.fail("self-loop at vertex " + std::to_string(p));
      }
    }
    sorted.checked = loops.checked = n;
    report.checks.push_back(sorted.check("adjacency-sorted", "vertices"));
    report.checks.push_back(loops.check("no-self-loops", "vertices"));
  }
  {
    Tally t;
    std::unordered_set<std::string> seen;
    for (const auto& k : raw.keys) {
      if (!seen.insert(k).second) t.fail("duplicate key '" + k + "'");
    }
    if (!raw.keys.empty() && raw.keys.size() != n) t.fail("key count differs from vertex count");
    t.checked = raw.keys.size();
    report.checks.push_back(t.check("keys-unique", "keys"));
  }
  if (!report.passed()) return report;

  const CitationGraph g =
      CitationGraph::from_csr(std::move(raw.keys), std::move(raw.out_offsets),
                              std::move(raw.out_targets));
  {
    Tally t;
    for (VertexId q = 0; q < n; ++q) {
      const auto citers = g.in(q);
      for (std::size_t i = 0; i < citers.size(); ++i) {
        if (i > 0 && citers[i - 1] >= citers[i]) t.fail("in-list not sorted");
        if (!g.has_edge(citers[i], q)) t.fail("in-list entry without matching out-edge");
      }
    }
    if (g.in_sources().size() != g.edge_count()) t.fail("in-list total differs from edge count");
    t.checked = g.edge_count();
    report.checks.push_back(t.check("transpose", "edges"));
  }
  if (n == 0) {
    return report;
  }

  std::mt19937_64 rng(options.seed);
  const WeightedGraph wg = weight_all_edges(g);
  {
    // Independent recount: for every citer r of p, probe r -> q by binary search.
    Tally t;
    const auto m = g.edge_count();
    std::uniform_int_distribution<EdgeIndex> pick_edge(0, m == 0 ? 0 : m - 1);
    const std::size_t checks = m == 0 ? 0 : std::min<std::uint64_t>(options.edge_checks, m);
    const auto offsets = g.out_offsets();
    for (std::size_t c = 0; c < checks; ++c) {
      const EdgeIndex e = checks == m ? c : pick_edge(rng);
      const auto p = static_cast<VertexId>(
          std::upper_bound(offsets.begin(), offsets.end(), e) - offsets.begin() - 1);
      const VertexId q = g.out_targets()[e];
      std::uint64_t expected = 0;
      for (VertexId r : g.in(p)) {
        if (r != q && g.has_edge(r, q)) ++expected;
      }
      if (expected != wg.out_weights()[e]) {
        t.fail("edge " + g.key(p) + " -> " + g.key(q) + ": kernel " +
               std::to_string(wg.out_weights()[e]) + ", recount " + std::to_string(expected));
      }
      ++t.checked;
    }
    std::vector<std::vector<VertexId>> samples;
    for (std::size_t s = 0; s < options.samples; ++s) {
      samples.push_back(sample_neighbourhood(g, options.sample_size, rng));
    }
    Tally roots;
    Tally level;
    Tally contraction;
    for (const auto& ids : samples) {
      const CitationGraph sub = induced_subgraph(g, ids);
      const oracle::DenseGraph dense(sub);
      const WeightedGraph sw = weight_all_edges(sub);
      const WeightedGraph ss = serial::weight_all_edges(sub);
      for (VertexId p = 0; p < sub.vertex_count(); ++p) {
        const auto targets = sub.out(p);
        for (std::size_t i = 0; i < targets.size(); ++i) {
          const auto want = oracle::oracle_cocitation(dense, p, targets[i]);
          if (sw.out_weights(p)[i] != want || ss.out_weights(p)[i] != want) {
            t.fail("sampled edge " + sub.key(p) + " -> " + sub.key(targets[i]) +
                   " disagrees with the dense oracle");
          }
          ++t.checked;
        }
      }

      const LevelResult got = eqrank_level(sw);
      const oracle::NaiveLevel want = oracle::naive_level(dense);
      if (got.root_authority != oracle::naive_roots(got.local_authority) ||
          got.root_hub != oracle::naive_roots(got.local_hub)) {
        roots.fail("sampled roots disagree with the naive walker");
      }
      roots.checked += sub.vertex_count();
      if (got.local_authority != want.local_authority || got.local_hub != want.local_hub ||
          got.partition.theme_of().size() != want.partition.theme_of.size() ||
          !std::equal(want.partition.theme_of.begin(), want.partition.theme_of.end(),
                      got.partition.theme_of().begin())) {
        level.fail("sampled level disagrees with the naive pass");
      }
      level.checked += sub.vertex_count();

      const ReducedGraph reduced = reduce_graph(sub, got.partition);
      const auto expected = oracle::naive_contraction(dense, want.partition.theme_of);
      bool same = reduced.graph.edge_count() == expected.size();
      for (VertexId a = 0; same && a < reduced.graph.vertex_count(); ++a) {
        const auto out = reduced.graph.out(a);
        for (std::size_t i = 0; same && i < out.size(); ++i) {
          const auto it = expected.find({a, out[i]});
          same = it != expected.end() &&
                 it->second == reduced.multiplicity[reduced.graph.out_begin(a) + i];
        }
      }
      if (!same) contraction.fail("sampled contraction disagrees with the naive grouping");
      contraction.checked += reduced.graph.edge_count();
    }
    report.checks.push_back(t.check("cocitation-oracle", "edges"));

    const auto ra = local_authority_map(wg);
    const auto rh = local_hub_map(wg);
    if (resolve_roots(ra) != serial::resolve_roots(ra) ||
        resolve_roots(rh) != serial::resolve_roots(rh)) {
      roots.fail("parallel roots disagree with the serial walk on the full graph");
    }
    roots.checked += n;
    report.checks.push_back(roots.check("roots-reference", "vertices"));
    report.checks.push_back(level.check("level-oracle", "vertices"));
    report.checks.push_back(contraction.check("contraction-oracle", "reduced edges"));
  }
  return report;
}

}  // namespace eqrank
