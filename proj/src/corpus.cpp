#include "newssum/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "newssum/error.hpp"

namespace newssum {
namespace {

bool is_blank(std::string_view s) noexcept {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  });
}

// Returns a record when the row passes validation, nullopt otherwise.
std::optional<ArticleRecord> validate(std::string id, std::string article, std::string highlights) {
  if (is_blank(article) || is_blank(highlights)) return std::nullopt;
  if (!is_valid_article_id(id)) id.clear();
  return ArticleRecord{std::move(id), std::move(article), std::move(highlights)};
}

void check_failure_ratio(std::size_t failed, std::size_t total) {
  if (total > 0 && failed * 2 > total) {
    throw Error(ErrorCode::kMalformedRow, std::to_string(failed) + " of " + std::to_string(total) +
                                              " rows failed validation; wrong format?");
  }
}

LoadResult parse_csv_corpus(std::string_view content, SplitName name) {
  auto rows = parse_csv(content);
  if (rows.empty()) throw Error(ErrorCode::kMissingColumn, "csv input has no header row");

  const auto& header = rows.front();
  auto column = [&](std::string_view wanted) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::string_view h = header[i];
      // Strip a UTF-8 byte order mark from the first column name.
      if (i == 0 && h.starts_with("\xEF\xBB\xBF")) h.remove_prefix(3);
      if (h == wanted) return i;
    }
    return std::nullopt;
  };
  const auto article_col = column("article");
  const auto highlights_col = column("highlights");
  const auto id_col = column("id");
  if (!article_col) throw Error(ErrorCode::kMissingColumn, "csv header lacks 'article'");
  if (!highlights_col) throw Error(ErrorCode::kMissingColumn, "csv header lacks 'highlights'");

  LoadResult result;
  result.split.name = name;
  std::size_t total = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    auto& row = rows[r];
    // A lone empty field is a trailing blank line, not a data row.
    if (row.size() == 1 && row[0].empty()) continue;
    ++total;
    if (row.size() != header.size()) {
      ++result.skipped;
      continue;
    }
    auto rec = validate(id_col ? std::move(row[*id_col]) : std::string{}, std::move(row[*article_col]),
                        std::move(row[*highlights_col]));
    if (rec) {
      result.split.records.push_back(std::move(*rec));
    } else {
      ++result.skipped;
    }
  }
  check_failure_ratio(result.skipped, total);
  return result;
}

LoadResult parse_jsonl_corpus(std::string_view content, SplitName name) {
  LoadResult result;
  result.split.name = name;
  std::size_t total = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    if (is_blank(line)) continue;
    ++total;

    auto doc = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    auto text_field = [&](const char* key) -> std::optional<std::string> {
      if (!doc.is_object()) return std::nullopt;
      auto it = doc.find(key);
      if (it == doc.end() || !it->is_string()) return std::nullopt;
      return it->get<std::string>();
    };
    auto article = text_field("article");
    auto highlights = text_field("highlights");
    if (!article || !highlights) {
      ++result.skipped;
      continue;
    }
    auto rec = validate(text_field("id").value_or(""), std::move(*article), std::move(*highlights));
    if (rec) {
      result.split.records.push_back(std::move(*rec));
    } else {
      ++result.skipped;
    }
  }
  check_failure_ratio(result.skipped, total);
  return result;
}

}  // namespace

std::string_view split_name(SplitName name) noexcept {
  switch (name) {
    case SplitName::kTrain:
      return "train";
    case SplitName::kValidation:
      return "validation";
    case SplitName::kTest:
      return "test";
  }
  return "unknown";
}

bool is_valid_article_id(std::string_view id) noexcept {
  return id.size() == 40 &&
         std::all_of(id.begin(), id.end(), [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

CorpusFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") return CorpusFormat::kJsonl;
  return CorpusFormat::kCsv;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view content) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool any = false;

  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        if (i + 1 < content.size() && content[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
        break;
      default:
        field.push_back(c);
    }
  }
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

LoadResult parse_corpus(std::string_view content, CorpusFormat format, SplitName name) {
  return format == CorpusFormat::kCsv ? parse_csv_corpus(content, name) : parse_jsonl_corpus(content, name);
}

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format, SplitName name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_corpus(buffer.str(), format, name);
}

CorpusSplit take_first(const CorpusSplit& split, std::size_t n) {
  CorpusSplit out;
  out.name = split.name;
  const auto count = std::min(n, split.records.size());
  out.records.assign(split.records.begin(), split.records.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

}  // namespace newssum
