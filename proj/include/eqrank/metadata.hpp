#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace eqrank {

enum class PaperTag { in_corpus, cited_only };

std::string_view to_string(PaperTag tag);
std::optional<PaperTag> parse_tag(std::string_view s);

struct PaperMetadata {
  std::string key;
  std::string title;
  std::vector<std::string> authors;
  PaperTag tag = PaperTag::in_corpus;

  friend bool operator==(const PaperMetadata&, const PaperMetadata&) = default;
};

/// Metadata records with unique keys, in file order.
class MetadataTable {
 public:
  MetadataTable() = default;

  /// Throws ParseError if the key is already present (line is used for the message).
  void add(PaperMetadata record, std::uint64_t line = 0);

  const PaperMetadata* find(std::string_view key) const;
  std::span<const PaperMetadata> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

 private:
  std::vector<PaperMetadata> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Parses `key<TAB>title<TAB>authors<TAB>tag` records; authors are `;`-separated.
/// Comment (`#`) and blank lines are skipped. Throws ParseError with the line number.
MetadataTable load_metadata(std::istream& source);

}  // namespace eqrank
