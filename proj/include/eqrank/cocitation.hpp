#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "eqrank/graph.hpp"
#include "eqrank/types.hpp"

namespace eqrank {

/**
 * Co-citation weights over a CitationGraph.
 *
 * weight(p -> q) = |in(p) ∩ in(q) \ {p, q}|, the number of papers citing both endpoints.
 * Out-weights are indexed like the graph's out-targets, in-weights like its in-sources, so
 * in_weights()[in_begin(q) + i] is the weight of edge in(q)[i] -> q.
 *
 * Holds a non-owning pointer to the graph; the graph must outlive this object.
 */
class WeightedGraph {
 public:
  WeightedGraph(const CitationGraph& g, std::vector<Weight> out_weights,
                std::vector<Weight> in_weights);

  const CitationGraph& graph() const noexcept { return *graph_; }
  std::span<const Weight> out_weights() const noexcept { return out_w_; }
  std::span<const Weight> in_weights() const noexcept { return in_w_; }

  std::span<const Weight> out_weights(VertexId p) const {
    return std::span<const Weight>(out_w_).subspan(graph_->out_begin(p), graph_->out_degree(p));
  }
  std::span<const Weight> in_weights(VertexId q) const {
    return std::span<const Weight>(in_w_).subspan(graph_->in_begin(q), graph_->in_degree(q));
  }

 private:
  const CitationGraph* graph_;
  std::vector<Weight> out_w_;
  std::vector<Weight> in_w_;
};

/// Size of the intersection of two strictly increasing lists, skipping `skip_a` and `skip_b`.
/// Gallops through the longer list when the lengths are lopsided.
Weight count_common(std::span<const VertexId> a, std::span<const VertexId> b, VertexId skip_a,
                    VertexId skip_b);

/// Co-citation count of an arbitrary vertex pair. Throws DomainError when p == q.
Weight cocitation_weight(const CitationGraph& g, VertexId p, VertexId q);

/// Weights every edge. OpenMP-parallel over citing vertices; the result does not depend on
/// the thread count.
WeightedGraph weight_all_edges(const CitationGraph& g);

namespace serial {
/// Single-threaded reference for weight_all_edges.
WeightedGraph weight_all_edges(const CitationGraph& g);
}  // namespace serial

/// Writes `citing<TAB>cited<TAB>weight` per edge, using vertex keys.
void write_weight_dump(std::ostream& out, const WeightedGraph& wg);

}  // namespace eqrank
