#include <gtest/gtest.h>
#include <omp.h>

#include <json.hpp>
#include <set>
#include <sstream>

#include "eqrank/errors.hpp"
#include "eqrank/hierarchy.hpp"
#include "eqrank/oracle.hpp"
#include "eqrank/snapshot.hpp"
#include "test_support.hpp"

using namespace eqrank;

namespace {

// Structural invariants every cluster tree must satisfy.
void expect_well_formed(const CitationGraph& g, const ClusterTree& tree, const std::string& label) {
  ASSERT_GE(tree.level_count(), 1u) << label;
  std::size_t units = g.vertex_count();
  for (std::uint32_t k = 1; k <= tree.level_count(); ++k) {
    const auto& level = tree.level(k);
    ASSERT_EQ(level.partition.unit_count(), units) << label << " level " << k;
    const std::size_t themes = level.partition.theme_count();
    if (k > 1) {
      ASSERT_LT(themes, units) << label << " level " << k;
    }
    // Each unit lies in exactly one theme.
    std::vector<int> seen(units, 0);
    for (ThemeIndex t = 0; t < themes; ++t) {
      ASSERT_FALSE(level.partition.members(t).empty());
      for (auto u : level.partition.members(t)) ++seen[u];
    }
    for (int s : seen) ASSERT_EQ(s, 1) << label;
    units = themes;
  }
  // Nesting: papers sharing a level-k theme share every higher theme.
  std::map<ThemeId, ThemeId> up;
  for (VertexId p = 0; p < g.vertex_count(); ++p) {
    const auto path = tree.theme_path(p);
    ASSERT_EQ(path.size(), tree.level_count());
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const auto [it, inserted] = up.emplace(path[k], path[k + 1]);
      ASSERT_EQ(it->second, path[k + 1]) << label << " paper " << p;
    }
  }
}

void expect_matches_naive(const CitationGraph& g, const ClusterTree& tree, int max_levels,
                          const std::string& label) {
  const auto naive = oracle::naive_hierarchy(oracle::DenseGraph(g), max_levels);
  ASSERT_EQ(tree.level_count(), naive.levels.size()) << label;
  EXPECT_EQ(tree.termination_cause(), naive.cause) << label;
  for (std::uint32_t k = 1; k <= tree.level_count(); ++k) {
    const auto theme_of = tree.level(k).partition.theme_of();
    ASSERT_EQ(std::vector<ThemeIndex>(theme_of.begin(), theme_of.end()),
              naive.levels[k - 1].theme_of)
        << label << " level " << k;
  }
}

}  // namespace

TEST(Hierarchy, TwoCamps) {
  const auto g = eqrank::testing::two_camps();
  const auto tree = run_hierarchy(g);
  ASSERT_EQ(tree.level_sizes(), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(tree.termination_cause(), TerminationCause::single_theme);
  const auto& l1 = tree.level(1);
  EXPECT_EQ(tree.ground_key(l1.root_authority_paper[0]), "a0");
  EXPECT_EQ(tree.ground_key(l1.root_hub_paper[0]), "a5");
  EXPECT_EQ(tree.ground_key(l1.root_authority_paper[1]), "b0");
  EXPECT_EQ(tree.ground_key(l1.root_hub_paper[1]), "b5");
  EXPECT_EQ(l1.parent, (std::vector<ThemeIndex>{0, 0}));
  // Reduced graph is A -> B: B is everyone's authority, A everyone's hub.
  const auto& l2 = tree.level(2);
  EXPECT_EQ(tree.ground_key(l2.root_authority_paper[0]), "b0");
  EXPECT_EQ(tree.ground_key(l2.root_hub_paper[0]), "a5");
  EXPECT_TRUE(l2.parent.empty());
  EXPECT_EQ(l2.diagnostics.unit_count, 2u);
  EXPECT_EQ(l2.diagnostics.edge_count, 1u);
  EXPECT_EQ(l1.diagnostics.edge_count, 31u);

  EXPECT_EQ(tree.theme_path("a3"), (std::vector<ThemeId>{{1, 0}, {2, 0}}));
  EXPECT_EQ(tree.theme_path("b2"), (std::vector<ThemeId>{{1, 1}, {2, 0}}));
  EXPECT_THROW(tree.theme_path("zz"), LookupError);
  EXPECT_THROW(tree.theme_path(VertexId{99}), LookupError);
  EXPECT_TRUE(tree.contains({2, 0}));
  EXPECT_FALSE(tree.contains({2, 1}));
  EXPECT_FALSE(tree.contains({3, 0}));
  EXPECT_FALSE(tree.contains({0, 0}));
  expect_well_formed(g, tree, "two camps");
  expect_matches_naive(g, tree, kDefaultMaxLevels, "two camps");
}

TEST(Hierarchy, PathologicalFixtures) {
  struct Case {
    std::string name;
    CitationGraph g;
    std::vector<std::size_t> sizes;
    TerminationCause cause;
  };
  const std::vector<Case> cases = {
      {"star", eqrank::testing::star(8), {8, 7, 6, 5, 4, 3, 2, 1}, TerminationCause::single_theme},
      {"path", eqrank::testing::path(10), {1}, TerminationCause::single_theme},
      {"complete", eqrank::testing::complete(6), {1}, TerminationCause::single_theme},
      {"edgeless", eqrank::testing::edgeless(5), {5}, TerminationCause::no_progress},
      {"single", eqrank::testing::edgeless(1), {1}, TerminationCause::single_theme},
  };
  for (const auto& c : cases) {
    const auto tree = run_hierarchy(c.g);
    EXPECT_EQ(tree.level_sizes(), c.sizes) << c.name;
    EXPECT_EQ(tree.termination_cause(), c.cause) << c.name;
    expect_well_formed(c.g, tree, c.name);
    expect_matches_naive(c.g, tree, kDefaultMaxLevels, c.name);
  }
  // A pure cycle: every paper's only citer and reference are its neighbours.
  const auto cyc = eqrank::testing::cycle(12);
  const auto tree = run_hierarchy(cyc);
  EXPECT_EQ(tree.level_sizes(), (std::vector<std::size_t>{1}));
  expect_well_formed(cyc, tree, "cycle");
}

TEST(Hierarchy, RandomGraphsAgreeWithNaiveAndNest) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 20 + seed * 12;
    const auto g = eqrank::testing::random_graph(n, 0.01 + 0.003 * seed, seed);
    const auto tree = run_hierarchy(g);
    const std::string label = "seed " + std::to_string(seed);
    expect_well_formed(g, tree, label);
    expect_matches_naive(g, tree, kDefaultMaxLevels, label);
  }
}

TEST(Hierarchy, MaxLevelsCapsTheTree) {
  const auto g = CitationGraph::from_edges(3000, synth::preferential_attachment(3000, 9000, 11));
  const auto full = run_hierarchy(g);
  ASSERT_GE(full.level_count(), 2u);
  const auto capped = run_hierarchy(g, 1);
  EXPECT_EQ(capped.level_count(), 1u);
  EXPECT_EQ(capped.termination_cause(), TerminationCause::max_levels);
  EXPECT_EQ(capped.level(1).partition, full.level(1).partition);
  EXPECT_THROW(run_hierarchy(g, 0), DomainError);
  expect_well_formed(g, full, "pa");
}

TEST(Hierarchy, ThreadCountDoesNotChangeTheTree) {
  const auto g = CitationGraph::from_edges(5000, synth::preferential_attachment(5000, 30000, 3));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto reference = run_hierarchy(g);
  for (int threads : {2, 4}) {
    omp_set_num_threads(threads);
    EXPECT_TRUE(run_hierarchy(g) == reference) << threads;
  }
  omp_set_num_threads(saved);
}

TEST(Reduce, MatchesSerialAndNaiveContraction) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto g = eqrank::testing::random_graph(60 + seed * 10, 0.05, seed);
    const auto level = eqrank_level(g);
    const auto fast = reduce_graph(g, level.partition);
    const auto slow = serial::reduce_graph(g, level.partition);
    ASSERT_EQ(fast.graph, slow.graph);
    ASSERT_EQ(fast.multiplicity, slow.multiplicity);
    const auto naive = oracle::naive_contraction(
        oracle::DenseGraph(g),
        std::vector<ThemeIndex>(level.partition.theme_of().begin(),
                                level.partition.theme_of().end()));
    ASSERT_EQ(fast.graph.edge_count(), naive.size());
    for (VertexId a = 0; a < fast.graph.vertex_count(); ++a) {
      const auto out = fast.graph.out(a);
      for (std::size_t i = 0; i < out.size(); ++i) {
        ASSERT_EQ(fast.multiplicity[fast.graph.out_begin(a) + i], naive.at({a, out[i]}));
      }
    }
  }
}

TEST(Reduce, DropsIntraThemeEdgesAndCountsMultiplicity) {
  // Themes {0,1} and {2,3}: edges 0->2, 1->2, 1->3 fold into one edge of multiplicity 3.
  const auto g = eqrank::testing::graph_of(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {3, 2}});
  const Partition part({0, 0, 1, 1}, {ThemeRoots{1, 0}, ThemeRoots{2, 3}});
  const auto r = reduce_graph(g, part);
  EXPECT_EQ(r.graph.vertex_count(), 2u);
  EXPECT_EQ(r.graph.edge_count(), 1u);
  EXPECT_TRUE(r.graph.has_edge(0, 1));
  EXPECT_EQ(r.multiplicity, (std::vector<std::uint64_t>{3}));
  EXPECT_FALSE(r.graph.has_keys());
}

TEST(TreeJson, RoundTrips) {
  const auto g = CitationGraph::from_edges(800, synth::preferential_attachment(800, 3000, 2),
                                           [] {
                                             std::vector<std::string> k;
                                             for (int i = 0; i < 800; ++i)
                                               k.push_back("P" + std::to_string(i));
                                             return k;
                                           }());
  auto tree = run_hierarchy(g);
  tree.set_graph_fingerprint(fingerprint(g));
  std::ostringstream out;
  write_tree_json(out, tree);
  std::istringstream in(out.str());
  const auto back = read_tree_json(in);
  EXPECT_TRUE(back == tree);
  std::ostringstream again;
  write_tree_json(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(TreeJson, RejectsBadDocuments) {
  const auto tree = run_hierarchy(eqrank::testing::two_camps());
  std::ostringstream out;
  write_tree_json(out, tree);
  const auto doc = nlohmann::json::parse(out.str());
  auto read = [](const nlohmann::json& j) {
    std::istringstream in(j.dump());
    return read_tree_json(in);
  };
  EXPECT_NO_THROW(read(doc));

  auto version = doc;
  version["format_version"] = 2;
  EXPECT_THROW(read(version), FormatError);

  auto cause = doc;
  cause["termination_cause"] = "bored";
  EXPECT_THROW(read(cause), FormatError);

  auto missing = doc;
  missing["levels"][0]["themes"][0]["member_indices"] = nlohmann::json::array({0});
  EXPECT_THROW(read(missing), FormatError);

  auto wrong_root = doc;
  wrong_root["levels"][0]["themes"][0]["root_authority_key"] = "b3";
  EXPECT_THROW(read(wrong_root), FormatError);

  std::istringstream garbage("{not json");
  EXPECT_THROW(read_tree_json(garbage), FormatError);
}

TEST(TreeJson, PartitionDump) {
  const auto tree = run_hierarchy(eqrank::testing::two_camps());
  std::ostringstream out;
  write_partition_dump(out, tree);
  const auto text = out.str();
  EXPECT_NE(text.find("a3\t1\t0\ta0\ta5\n"), std::string::npos);
  EXPECT_NE(text.find("b3\t2\t0\tb0\ta5\n"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 24);
}

TEST(Termination, NamesRoundTrip) {
  for (auto c : {TerminationCause::no_progress, TerminationCause::single_theme,
                 TerminationCause::max_levels}) {
    EXPECT_EQ(parse_termination_cause(to_string(c)), c);
  }
  EXPECT_FALSE(parse_termination_cause("done").has_value());
}
