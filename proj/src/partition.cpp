#include <limits>
#include <numeric>
#include <unordered_map>

#include "eqrank/errors.hpp"
#include "eqrank/level.hpp"

namespace eqrank {

Partition::Partition(std::vector<ThemeIndex> theme_of, std::vector<ThemeRoots> roots)
    : theme_of_(std::move(theme_of)), roots_(std::move(roots)) {
  member_offsets_.assign(roots_.size() + 1, 0);
  for (ThemeIndex t : theme_of_) {
    if (t >= roots_.size()) {
      throw DomainError("partition: theme index out of range");
    }
    ++member_offsets_[t + 1];
  }
  std::partial_sum(member_offsets_.begin(), member_offsets_.end(), member_offsets_.begin());
  members_.resize(theme_of_.size());
  std::vector<std::uint64_t> cursor(member_offsets_.begin(), member_offsets_.end() - 1);
  for (VertexId v = 0; v < theme_of_.size(); ++v) {
    members_[cursor[theme_of_[v]]++] = v;
  }
  for (std::size_t t = 0; t < roots_.size(); ++t) {
    if (member_offsets_[t] == member_offsets_[t + 1]) {
      throw DomainError("partition: theme " + std::to_string(t) + " has no members");
    }
  }
}

Partition theme_partition(std::span<const VertexId> root_authority,
                          std::span<const VertexId> root_hub) {
  if (root_authority.size() != root_hub.size()) {
    throw DomainError("theme_partition: root vectors differ in length");
  }
  const std::size_t n = root_authority.size();
  std::vector<ThemeIndex> theme_of(n);
  std::vector<ThemeRoots> roots;
  std::unordered_map<std::uint64_t, ThemeIndex> index;
  index.reserve(n / 4 + 16);
  for (VertexId v = 0; v < n; ++v) {
    const std::uint64_t pair =
        (static_cast<std::uint64_t>(root_authority[v]) << 32) | root_hub[v];
    const auto [it, inserted] = index.try_emplace(pair, static_cast<ThemeIndex>(roots.size()));
    if (inserted) {
      roots.push_back({root_authority[v], root_hub[v]});
    }
    theme_of[v] = it->second;
  }
  return Partition(std::move(theme_of), std::move(roots));
}

}  // namespace eqrank
