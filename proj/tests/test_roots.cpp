#include <gtest/gtest.h>
#include <omp.h>

#include "eqrank/errors.hpp"
#include "eqrank/level.hpp"
#include "eqrank/oracle.hpp"
#include "test_support.hpp"

using namespace eqrank;

TEST(Roots, FixedPointsAndCycles) {
  // 0 -> 1 -> 2 -> 1 (cycle {1,2}); 3 fixed; 4 -> 3; 7 -> 6 -> 5 -> 7 (cycle {5,6,7}).
  const std::vector<VertexId> next{1, 2, 1, 3, 3, 7, 5, 6};
  const std::vector<VertexId> want{1, 1, 1, 3, 3, 5, 5, 5};
  EXPECT_EQ(resolve_roots(next), want);
  EXPECT_EQ(serial::resolve_roots(next), want);
  EXPECT_EQ(oracle::naive_roots(next), want);
}

TEST(Roots, LongChainIntoTwoCycle) {
  const std::size_t n = 5000;
  std::vector<VertexId> next(n);
  for (VertexId i = 0; i + 1 < n; ++i) next[i] = i + 1;
  next[n - 1] = static_cast<VertexId>(n - 2);
  const auto roots = resolve_roots(next);
  for (auto r : roots) ASSERT_EQ(r, n - 2);
  EXPECT_EQ(serial::resolve_roots(next), roots);
}

TEST(Roots, EmptyAndInvalid) {
  EXPECT_TRUE(resolve_roots(std::vector<VertexId>{}).empty());
  EXPECT_THROW(resolve_roots(std::vector<VertexId>{0, 7}), DomainError);
}

TEST(Roots, RandomFunctionalGraphsMatchWalker) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 100 + seed * 97;
    std::vector<std::size_t> cycles;
    for (std::size_t len = 2 + seed % 7; len <= 50; len += 9) cycles.push_back(len);
    const auto next = eqrank::testing::random_functional_graph(n, seed, cycles);
    const auto want = oracle::naive_roots(next);
    ASSERT_EQ(resolve_roots(next), want) << "seed " << seed;
    ASSERT_EQ(serial::resolve_roots(next), want) << "seed " << seed;
  }
}

TEST(Roots, ThreadCountDoesNotMatter) {
  const auto next = eqrank::testing::random_functional_graph(20000, 99, {2, 3, 17, 50});
  const auto want = serial::resolve_roots(next);
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    EXPECT_EQ(resolve_roots(next), want) << threads;
  }
  omp_set_num_threads(saved);
}
