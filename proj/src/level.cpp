#include "eqrank/level.hpp"

namespace eqrank {

LevelResult eqrank_level(const WeightedGraph& wg) {
  const CitationGraph& g = wg.graph();
  LevelResult r;
  r.local_authority = local_authority_map(wg);
  r.local_hub = local_hub_map(wg);
  r.root_authority = resolve_roots(r.local_authority);
  r.root_hub = resolve_roots(r.local_hub);
  r.partition = theme_partition(r.root_authority, r.root_hub);

  for (VertexId p = 0; p < g.vertex_count(); ++p) {
    if (r.local_authority[p] != p) {
      const auto e = *g.find_edge(p, r.local_authority[p]);
      r.zero_weight_authority_picks += wg.out_weights()[e] == 0 ? 1 : 0;
    }
    if (r.local_hub[p] != p) {
      const auto e = *g.find_edge(r.local_hub[p], p);
      r.zero_weight_hub_picks += wg.out_weights()[e] == 0 ? 1 : 0;
    }
  }
  return r;
}

LevelResult eqrank_level(const CitationGraph& g) { return eqrank_level(weight_all_edges(g)); }

}  // namespace eqrank
