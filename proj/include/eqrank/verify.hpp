#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace eqrank {

struct VerifyOptions {
  /// Induced neighbourhoods re-checked against the dense oracles.
  std::size_t samples = 3;
  std::size_t sample_size = 200;
  /// Full-graph edges whose co-citation weight is recomputed independently.
  std::size_t edge_checks = 2000;
  std::uint64_t seed = 1;
};

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return !checks.empty();
  }
};

/**
 * Integrity and oracle checks over a graph snapshot:
 *   checksum, csr-structure, adjacency-sorted, no-self-loops, keys-unique, transpose,
 *   cocitation-oracle, roots-reference, level-oracle, contraction-oracle.
 * Structural failures stop the run before the kernel checks.
 */
VerifyReport verify_snapshot(std::istream& in, const VerifyOptions& options = {});

}  // namespace eqrank
