#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "newssum/corpus.hpp"

namespace newssum {

enum class CleanStep {
  kLowercase,
  kExpandContractions,
  kStripUrls,
  kStripMarkup,
  kRemoveSpecialCharacters,
  kRemoveQuotes,
  kCollapseWhitespace,
};

std::string_view clean_step_name(CleanStep step) noexcept;

struct CleanText {
  std::string text;
  std::vector<CleanStep> steps_applied;
};

// Contraction -> expansion map with lowercase keys. Keys must contain an
// apostrophe and expansions may only use letters and spaces, so expanding
// never creates new contractions or sentence punctuation.
class ContractionTable {
 public:
  ContractionTable() = default;

  // Parses `contraction<TAB>expansion` lines; `#` starts a comment line.
  static ContractionTable parse(std::string_view content);
  static ContractionTable load(const std::filesystem::path& path);
  // The table shipped in data/contractions.tsv, compiled in.
  static const ContractionTable& builtin();

  void add(std::string_view contraction, std::string_view expansion);

  // Entries sorted longest key first (ties lexicographic).
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::string* find(std::string_view key) const noexcept;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Seven-step normalisation applied to both article bodies and highlights.
// Output alphabet is [a-z0-9 .!?,] with single spaces and no leading or
// trailing whitespace. Sentence punctuation and commas survive; everything
// else outside the alphabet (including non-ASCII code points) becomes a
// space, and single/double quotes are deleted.
CleanText clean(std::string_view raw, const ContractionTable& table);

inline CleanText clean(std::string_view raw) { return clean(raw, ContractionTable::builtin()); }

std::pair<CleanText, CleanText> clean_record(const ArticleRecord& rec, const ContractionTable& table);

}  // namespace newssum
