#include <algorithm>
#include <bit>
#include <cstdint>

#include "eqrank/errors.hpp"
#include "eqrank/level.hpp"

namespace eqrank {

namespace {

void check_total(std::span<const VertexId> next) {
  for (VertexId v : next) {
    if (v >= next.size()) {
      throw DomainError("resolve_roots: successor out of range");
    }
  }
}

}  // namespace

std::vector<VertexId> resolve_roots(std::span<const VertexId> next) {
  check_total(next);
  const std::size_t n = next.size();
  const auto sn = static_cast<std::int64_t>(n);
  if (n == 0) {
    return {};
  }
  // After k rounds: jump[v] = next^(2^k)(v) and low[v] = min over steps 0..2^k from v.
  // Once 2^k >= n every jump lands on its terminal cycle and low on a cycle vertex spans
  // the whole cycle.
  std::vector<VertexId> jump(next.begin(), next.end());
  std::vector<VertexId> low(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < sn; ++i) {
    low[i] = std::min(static_cast<VertexId>(i), next[i]);
  }
  std::vector<VertexId> jump2(n);
  std::vector<VertexId> low2(n);
  const int rounds = std::bit_width(n - 1);
  for (int round = 0; round < rounds; ++round) {
    bool changed = false;
#pragma omp parallel for schedule(static) reduction(|| : changed)
    for (std::int64_t i = 0; i < sn; ++i) {
      const VertexId j = jump[i];
      jump2[i] = jump[j];
      low2[i] = std::min(low[i], low[j]);
      changed = changed || jump2[i] != j || low2[i] != low[i];
    }
    jump.swap(jump2);
    low.swap(low2);
    if (!changed) {
      break;
    }
  }
  std::vector<VertexId> root(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < sn; ++i) {
    root[i] = low[jump[i]];
  }
  return root;
}

namespace serial {

std::vector<VertexId> resolve_roots(std::span<const VertexId> next) {
  check_total(next);
  const std::size_t n = next.size();
  enum : std::uint8_t { kUnseen, kOnPath, kDone };
  std::vector<std::uint8_t> state(n, kUnseen);
  std::vector<VertexId> root(n);
  std::vector<VertexId> path;
  for (VertexId start = 0; start < n; ++start) {
    if (state[start] != kUnseen) {
      continue;
    }
    path.clear();
    VertexId v = start;
    while (state[v] == kUnseen) {
      state[v] = kOnPath;
      path.push_back(v);
      v = next[v];
    }
    if (state[v] == kOnPath) {
      // v starts a new terminal cycle.
      VertexId smallest = v;
      for (VertexId u = next[v]; u != v; u = next[u]) {
        smallest = std::min(smallest, u);
      }
      VertexId u = v;
      do {
        root[u] = smallest;
        state[u] = kDone;
        u = next[u];
      } while (u != v);
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (state[*it] != kDone) {
        root[*it] = root[next[*it]];
        state[*it] = kDone;
      }
    }
  }
  return root;
}

}  // namespace serial

}  // namespace eqrank
