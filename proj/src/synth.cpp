#include "eqrank/synth.hpp"

#include <algorithm>
#include <random>

namespace eqrank::synth {

EdgeList preferential_attachment(std::size_t vertices, std::uint64_t edges, std::uint64_t seed,
                                 double uniform_share) {
  EdgeList out;
  if (vertices < 2) {
    return out;
  }
  out.reserve(edges);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  // Every edge target appears once here, so a uniform pick is in-degree proportional.
  std::vector<VertexId> endpoints;
  endpoints.reserve(edges);
  std::vector<VertexId> picks;
  std::uint64_t carry = 0;
  const std::uint64_t steps = vertices - 1;
  for (std::uint64_t i = 1; i < vertices; ++i) {
    const std::uint64_t quota = edges * i / steps - edges * (i - 1) / steps + carry;
    const std::uint64_t k = std::min<std::uint64_t>(quota, i);
    carry = quota - k;
    picks.clear();
    std::uniform_int_distribution<VertexId> uniform(0, static_cast<VertexId>(i - 1));
    std::uint64_t attempts = 0;
    while (picks.size() < k && attempts < 32 * k + 32) {
      ++attempts;
      VertexId q;
      if (endpoints.empty() || coin(rng) < uniform_share) {
        q = uniform(rng);
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
        q = endpoints[pick(rng)];
      }
      if (std::find(picks.begin(), picks.end(), q) == picks.end()) {
        picks.push_back(q);
      }
    }
    for (VertexId q = 0; picks.size() < k; ++q) {
      if (std::find(picks.begin(), picks.end(), q) == picks.end()) {
        picks.push_back(q);
      }
    }
    for (VertexId q : picks) {
      out.emplace_back(static_cast<VertexId>(i), q);
      endpoints.push_back(q);
    }
  }
  return out;
}

EdgeList random_digraph(std::size_t vertices, double edge_probability, std::uint64_t seed) {
  EdgeList out;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(edge_probability);
  for (VertexId p = 0; p < vertices; ++p) {
    for (VertexId q = 0; q < vertices; ++q) {
      if (p != q && edge(rng)) {
        out.emplace_back(p, q);
      }
    }
  }
  return out;
}

void write_edge_list(std::ostream& out, const EdgeList& edges) {
  for (const auto& [p, q] : edges) {
    out << 'P' << p << '\t' << 'P' << q << '\n';
  }
}

}  // namespace eqrank::synth
