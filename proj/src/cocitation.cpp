#include "eqrank/cocitation.hpp"

#include <algorithm>

#include "eqrank/errors.hpp"

namespace eqrank {

namespace {

// Above this length ratio the shorter list drives an exponential search in the longer one.
constexpr std::size_t kGallopRatio = 16;

Weight merge_count(std::span<const VertexId> a, std::span<const VertexId> b, VertexId skip_a,
                   VertexId skip_b) {
  Weight count = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      count += (a[i] != skip_a && a[i] != skip_b) ? 1 : 0;
      ++i;
      ++j;
    }
  }
  return count;
}

Weight gallop_count(std::span<const VertexId> small, std::span<const VertexId> large,
                    VertexId skip_a, VertexId skip_b) {
  Weight count = 0;
  std::size_t lo = 0;
  for (VertexId x : small) {
    std::size_t step = 1;
    std::size_t hi = lo;
    while (hi < large.size() && large[hi] < x) {
      lo = hi + 1;
      hi += step;
      step <<= 1;
    }
    hi = std::min(hi + 1, large.size());
    const auto it = std::lower_bound(large.begin() + static_cast<std::ptrdiff_t>(lo),
                                     large.begin() + static_cast<std::ptrdiff_t>(hi), x);
    lo = static_cast<std::size_t>(it - large.begin());
    if (lo == large.size()) {
      break;
    }
    if (*it == x && x != skip_a && x != skip_b) {
      ++count;
    }
  }
  return count;
}

std::vector<Weight> out_weights_serial(const CitationGraph& g) {
  std::vector<Weight> w(g.edge_count());
  for (VertexId p = 0; p < g.vertex_count(); ++p) {
    const auto targets = g.out(p);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      w[g.out_begin(p) + i] = merge_count(g.in(p), g.in(targets[i]), p, targets[i]);
    }
  }
  return w;
}

}  // namespace

WeightedGraph::WeightedGraph(const CitationGraph& g, std::vector<Weight> out_weights,
                             std::vector<Weight> in_weights)
    : graph_(&g), out_w_(std::move(out_weights)), in_w_(std::move(in_weights)) {
  if (out_w_.size() != g.edge_count() || in_w_.size() != g.edge_count()) {
    throw DomainError("weight vectors do not match the graph's edge count");
  }
}

Weight count_common(std::span<const VertexId> a, std::span<const VertexId> b, VertexId skip_a,
                    VertexId skip_b) {
  if (a.size() > b.size()) {
    std::swap(a, b);
  }
  if (a.empty()) {
    return 0;
  }
  if (b.size() / a.size() >= kGallopRatio) {
    return gallop_count(a, b, skip_a, skip_b);
  }
  return merge_count(a, b, skip_a, skip_b);
}

Weight cocitation_weight(const CitationGraph& g, VertexId p, VertexId q) {
  if (p == q) {
    throw DomainError("co-citation of a vertex with itself is undefined");
  }
  if (p >= g.vertex_count() || q >= g.vertex_count()) {
    throw LookupError("vertex out of range");
  }
  return count_common(g.in(p), g.in(q), p, q);
}

WeightedGraph weight_all_edges(const CitationGraph& g) {
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  std::vector<Weight> out_w(g.edge_count());
  std::vector<Weight> in_w(g.edge_count());

#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t p = 0; p < n; ++p) {
    const auto v = static_cast<VertexId>(p);
    const auto targets = g.out(v);
    const auto base = g.out_begin(v);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      out_w[base + i] = count_common(g.in(v), g.in(targets[i]), v, targets[i]);
    }
  }

#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t q = 0; q < n; ++q) {
    const auto v = static_cast<VertexId>(q);
    const auto citers = g.in(v);
    const auto base = g.in_begin(v);
    for (std::size_t i = 0; i < citers.size(); ++i) {
      in_w[base + i] = out_w[*g.find_edge(citers[i], v)];
    }
  }
  return WeightedGraph(g, std::move(out_w), std::move(in_w));
}

namespace serial {

WeightedGraph weight_all_edges(const CitationGraph& g) {
  std::vector<Weight> out_w = out_weights_serial(g);
  std::vector<Weight> in_w(g.edge_count());
  std::vector<EdgeIndex> cursor(g.in_offsets().begin(), g.in_offsets().end() - 1);
  for (VertexId r = 0; r < g.vertex_count(); ++r) {
    const auto targets = g.out(r);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      in_w[cursor[targets[i]]++] = out_w[g.out_begin(r) + i];
    }
  }
  return WeightedGraph(g, std::move(out_w), std::move(in_w));
}

}  // namespace serial

void write_weight_dump(std::ostream& out, const WeightedGraph& wg) {
  const CitationGraph& g = wg.graph();
  for (VertexId p = 0; p < g.vertex_count(); ++p) {
    const auto targets = g.out(p);
    const auto weights = wg.out_weights(p);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      out << g.key(p) << '\t' << g.key(targets[i]) << '\t' << weights[i] << '\n';
    }
  }
}

}  // namespace eqrank
