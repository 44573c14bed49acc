#include <cstdint>

#include "eqrank/level.hpp"

namespace eqrank {

namespace {

// Heaviest neighbour; neighbours are sorted, so the first strict maximum is the smallest id.
VertexId heaviest(std::span<const VertexId> neighbours, std::span<const Weight> weights,
                  VertexId self) {
  if (neighbours.empty()) {
    return self;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < neighbours.size(); ++i) {
    if (weights[i] > weights[best]) {
      best = i;
    }
  }
  return neighbours[best];
}

}  // namespace

std::vector<VertexId> local_authority_map(const WeightedGraph& wg) {
  const CitationGraph& g = wg.graph();
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  std::vector<VertexId> la(g.vertex_count());
#pragma omp parallel for schedule(static, 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto p = static_cast<VertexId>(i);
    la[p] = heaviest(g.out(p), wg.out_weights(p), p);
  }
  return la;
}

std::vector<VertexId> local_hub_map(const WeightedGraph& wg) {
  const CitationGraph& g = wg.graph();
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  std::vector<VertexId> lh(g.vertex_count());
#pragma omp parallel for schedule(static, 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto p = static_cast<VertexId>(i);
    lh[p] = heaviest(g.in(p), wg.in_weights(p), p);
  }
  return lh;
}

namespace serial {

std::vector<VertexId> local_authority_map(const WeightedGraph& wg) {
  const CitationGraph& g = wg.graph();
  std::vector<VertexId> la(g.vertex_count());
  for (VertexId p = 0; p < g.vertex_count(); ++p) {
    la[p] = heaviest(g.out(p), wg.out_weights(p), p);
  }
  return la;
}

std::vector<VertexId> local_hub_map(const WeightedGraph& wg) {
  const CitationGraph& g = wg.graph();
  std::vector<VertexId> lh(g.vertex_count());
  for (VertexId p = 0; p < g.vertex_count(); ++p) {
    lh[p] = heaviest(g.in(p), wg.in_weights(p), p);
  }
  return lh;
}

}  // namespace serial

}  // namespace eqrank
