#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace newssum {

// One CNN/DailyMail row. `id` is the hex SHA1 of the source URL; it is kept
// for traceability only and is empty when the source has no valid id.
struct ArticleRecord {
  std::string id;
  std::string article;
  std::string highlights;

  friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

enum class SplitName { kTrain, kValidation, kTest };

std::string_view split_name(SplitName name) noexcept;

struct CorpusSplit {
  SplitName name = SplitName::kValidation;
  std::vector<ArticleRecord> records;  // file order

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
};

enum class CorpusFormat { kCsv, kJsonl };

struct LoadResult {
  CorpusSplit split;
  std::size_t skipped = 0;
};

// Guess the format from the file extension (.jsonl/.json -> jsonl, else csv).
CorpusFormat format_from_path(const std::filesystem::path& path);

// Loads every row with a non-empty article and highlights; invalid rows are
// skipped and counted. Throws Error{kFileNotFound} if the file is missing,
// Error{kMissingColumn} if a CSV header lacks `article` or `highlights`, and
// Error{kMalformedRow} when more than half of the rows fail validation.
LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format,
                       SplitName name = SplitName::kValidation);

// Same, parsing from memory.
LoadResult parse_corpus(std::string_view content, CorpusFormat format,
                        SplitName name = SplitName::kValidation);

CorpusSplit take_first(const CorpusSplit& split, std::size_t n);

bool is_valid_article_id(std::string_view id) noexcept;

// RFC 4180 record reader: quoted fields may contain commas, CRLF/LF and
// doubled quotes. Returns one vector of fields per record.
std::vector<std::vector<std::string>> parse_csv(std::string_view content);

}  // namespace newssum
