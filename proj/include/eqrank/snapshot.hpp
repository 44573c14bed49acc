#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "eqrank/graph.hpp"

namespace eqrank {

/// Binary graph snapshot format version written by write_snapshot.
inline constexpr std::uint32_t kGraphSnapshotVersion = 1;

/*
 * Layout (little-endian):
 *   char[8]  magic "EQRGRAPH"
 *   u32      version
 *   u32      flags (bit 0: vertices carry keys)
 *   u64      n, m, raw_edge_records
 *   u64[n+1] out offsets
 *   u32[m]   out targets
 *   keys     n x (u32 length, bytes)            -- only when flag bit 0 is set
 *   u64      FNV-1a 64 of every preceding byte
 *
 * In-lists are derived on load, so the byte image is a pure function of the graph.
 */

/// Unvalidated contents of a snapshot file, as read. Used by integrity checks.
struct RawSnapshot {
  std::uint32_t version = 0;
  std::vector<std::string> keys;
  std::vector<EdgeIndex> out_offsets;
  std::vector<VertexId> out_targets;
  std::uint64_t raw_edge_records = 0;
  std::uint64_t stored_checksum = 0;
  std::uint64_t computed_checksum = 0;
};

void write_snapshot(std::ostream& out, const CitationGraph& g);
std::string snapshot_bytes(const CitationGraph& g);

/// Reads and validates a snapshot. Throws FormatError on bad magic, version, checksum,
/// truncation, or a non-normalized adjacency structure.
CitationGraph read_snapshot(std::istream& in);

/// Reads a snapshot without checksum or structural validation. Throws FormatError only when
/// the file cannot be decoded at all (bad magic, truncation, implausible sizes).
RawSnapshot read_raw_snapshot(std::istream& in);

/// Checksum of the snapshot image; identifies a graph across artifacts.
std::uint64_t fingerprint(const CitationGraph& g);

CitationGraph read_snapshot_file(const std::string& path);
void write_snapshot_file(const std::string& path, const CitationGraph& g);

std::string fingerprint_hex(std::uint64_t fp);

}  // namespace eqrank
