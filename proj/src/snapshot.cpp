#include "eqrank/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "eqrank/errors.hpp"

namespace eqrank {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace {

constexpr std::array<char, 8> kMagic = {'E', 'Q', 'R', 'G', 'R', 'A', 'P', 'H'};
constexpr std::uint32_t kFlagKeys = 1;

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

class Writer {
 public:
  template <typename T>
  void put(const T& value) {
    buf_.append(reinterpret_cast<const char*>(&value), sizeof(T));
  }
  template <typename T>
  void put_array(std::span<const T> values) {
    buf_.append(reinterpret_cast<const char*>(values.data()), values.size_bytes());
  }
  void put_bytes(std::string_view s) { buf_.append(s); }
  std::string take() { return std::move(buf_); }
  const std::string& buffer() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  template <typename T>
  T get() {
    T value;
    std::memcpy(&value, take(sizeof(T)).data(), sizeof(T));
    return value;
  }
  template <typename T>
  std::vector<T> get_array(std::uint64_t count) {
    if (count > remaining() / sizeof(T)) {
      throw FormatError("snapshot truncated");
    }
    std::vector<T> values(count);
    std::memcpy(values.data(), take(count * sizeof(T)).data(), count * sizeof(T));
    return values;
  }
  std::string_view take(std::uint64_t size) {
    if (size > remaining()) {
      throw FormatError("snapshot truncated");
    }
    auto out = data_.substr(pos_, size);
    pos_ += size;
    return out;
  }
  std::uint64_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

std::string encode_payload(const CitationGraph& g) {
  Writer w;
  w.put_bytes(std::string_view(kMagic.data(), kMagic.size()));
  w.put(kGraphSnapshotVersion);
  w.put(g.has_keys() ? kFlagKeys : std::uint32_t{0});
  w.put(static_cast<std::uint64_t>(g.vertex_count()));
  w.put(static_cast<std::uint64_t>(g.edge_count()));
  w.put(g.raw_edge_records());
  w.put_array(g.out_offsets());
  w.put_array(g.out_targets());
  if (g.has_keys()) {
    for (const auto& key : g.keys()) {
      w.put(static_cast<std::uint32_t>(key.size()));
      w.put_bytes(key);
    }
  }
  return w.take();
}

std::string slurp(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

std::string snapshot_bytes(const CitationGraph& g) {
  std::string payload = encode_payload(g);
  const std::uint64_t checksum = fnv1a(payload);
  payload.append(reinterpret_cast<const char*>(&checksum), sizeof checksum);
  return payload;
}

void write_snapshot(std::ostream& out, const CitationGraph& g) {
  const std::string bytes = snapshot_bytes(g);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw FormatError("failed to write graph snapshot");
  }
}

std::uint64_t fingerprint(const CitationGraph& g) { return fnv1a(encode_payload(g)); }

RawSnapshot read_raw_snapshot(std::istream& in) {
  const std::string data = slurp(in);
  Reader r(data);
  const auto magic = r.take(kMagic.size());
  if (magic != std::string_view(kMagic.data(), kMagic.size())) {
    throw FormatError("not a graph snapshot (bad magic)");
  }
  RawSnapshot snap;
  snap.version = r.get<std::uint32_t>();
  if (snap.version != kGraphSnapshotVersion) {
    throw FormatError("unsupported graph snapshot version " + std::to_string(snap.version) +
                      " (expected " + std::to_string(kGraphSnapshotVersion) + ")");
  }
  const auto flags = r.get<std::uint32_t>();
  const auto n = r.get<std::uint64_t>();
  const auto m = r.get<std::uint64_t>();
  snap.raw_edge_records = r.get<std::uint64_t>();
  if (n >= std::numeric_limits<VertexId>::max()) {
    throw FormatError("implausible vertex count");
  }
  snap.out_offsets = r.get_array<EdgeIndex>(n + 1);
  snap.out_targets = r.get_array<VertexId>(m);
  if ((flags & kFlagKeys) != 0) {
    snap.keys.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto len = r.get<std::uint32_t>();
      snap.keys.emplace_back(r.take(len));
    }
  }
  const std::size_t payload_size = r.position();
  snap.stored_checksum = r.get<std::uint64_t>();
  if (r.remaining() != 0) {
    throw FormatError("trailing bytes after graph snapshot");
  }
  snap.computed_checksum = fnv1a(std::string_view(data).substr(0, payload_size));
  return snap;
}

CitationGraph read_snapshot(std::istream& in) {
  RawSnapshot snap = read_raw_snapshot(in);
  if (snap.stored_checksum != snap.computed_checksum) {
    throw FormatError("graph snapshot checksum mismatch (stored " +
                      fingerprint_hex(snap.stored_checksum) + ", computed " +
                      fingerprint_hex(snap.computed_checksum) + ")");
  }
  CitationGraph g = CitationGraph::from_csr(std::move(snap.keys), std::move(snap.out_offsets),
                                            std::move(snap.out_targets));
  g.set_raw_edge_records(snap.raw_edge_records);
  return g;
}

CitationGraph read_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open graph snapshot '" + path + "'");
  }
  return read_snapshot(in);
}

void write_snapshot_file(const std::string& path, const CitationGraph& g) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FormatError("cannot create '" + path + "'");
  }
  write_snapshot(out, g);
}

std::string fingerprint_hex(std::uint64_t fp) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << fp;
  return s.str();
}

}  // namespace eqrank
