#include "eqrank/metadata.hpp"

#include <algorithm>

#include "eqrank/errors.hpp"

namespace eqrank {

std::string_view to_string(PaperTag tag) {
  switch (tag) {
    case PaperTag::in_corpus:
      return "in_corpus";
    case PaperTag::cited_only:
      return "cited_only";
  }
  return "in_corpus";
}

std::optional<PaperTag> parse_tag(std::string_view s) {
  if (s == "in_corpus") return PaperTag::in_corpus;
  if (s == "cited_only") return PaperTag::cited_only;
  return std::nullopt;
}

void MetadataTable::add(PaperMetadata record, std::uint64_t line) {
  if (index_.contains(record.key)) {
    throw ParseError(line, "duplicate metadata key '" + record.key + "'");
  }
  index_.emplace(record.key, records_.size());
  records_.push_back(std::move(record));
}

const PaperMetadata* MetadataTable::find(std::string_view key) const {
  const auto it = index_.find(std::string(key));
  return it == index_.end() ? nullptr : &records_[it->second];
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

MetadataTable load_metadata(std::istream& source) {
  MetadataTable table;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(source, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (trim(line).empty() || line.front() == '#') {
      continue;
    }
    const auto fields = split(line, '\t');
    if (fields.size() != 4) {
      throw ParseError(lineno,
                       "expected 4 tab-separated fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      throw ParseError(lineno, "empty key");
    }
    const auto tag = parse_tag(trim(fields[3]));
    if (!tag) {
      throw ParseError(lineno, "unknown tag '" + std::string(fields[3]) +
                                   "' (expected in_corpus or cited_only)");
    }
    PaperMetadata record;
    record.key = std::string(fields[0]);
    record.title = std::string(trim(fields[1]));
    for (auto author : split(fields[2], ';')) {
      author = trim(author);
      if (!author.empty()) {
        record.authors.emplace_back(author);
      }
    }
    record.tag = *tag;
    table.add(std::move(record), lineno);
  }
  return table;
}

}  // namespace eqrank
