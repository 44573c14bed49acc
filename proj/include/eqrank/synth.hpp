#pragma once

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "eqrank/types.hpp"

namespace eqrank::synth {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

/// Growing citation network: vertex i cites earlier vertices, picked in proportion to their
/// current in-degree (plus a uniform share). Produces exactly `edges` distinct edges when the
/// vertex count allows it. The result is a DAG.
EdgeList preferential_attachment(std::size_t vertices, std::uint64_t edges, std::uint64_t seed,
                                 double uniform_share = 0.2);

/// Directed G(n, p) without self-loops.
EdgeList random_digraph(std::size_t vertices, double edge_probability, std::uint64_t seed);

/// Writes `P<citing><TAB>P<cited>` lines.
void write_edge_list(std::ostream& out, const EdgeList& edges);

}  // namespace eqrank::synth
