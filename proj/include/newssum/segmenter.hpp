#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace newssum {

struct SentenceSet {
  std::vector<std::string> sentences;
  std::vector<std::size_t> positions;  // 0..n-1 at construction

  std::size_t size() const noexcept { return sentences.size(); }
  bool empty() const noexcept { return sentences.empty(); }
};

// Lowercase abbreviations without their trailing period ("mr", "u.s").
class AbbreviationSet {
 public:
  AbbreviationSet() = default;
  explicit AbbreviationSet(std::set<std::string, std::less<>> entries);

  // One entry per line; blank lines and `#` comments ignored.
  static AbbreviationSet parse(std::string_view content);
  static AbbreviationSet load(const std::filesystem::path& path);
  static const AbbreviationSet& builtin();

  bool contains(std::string_view token) const { return entries_.find(token) != entries_.end(); }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::set<std::string, std::less<>> entries_;
};

inline constexpr std::size_t kDefaultMinSentenceWords = 3;

// Splits cleaned text after runs of . ! ? that are followed by a space or
// the end of text. A lone period does not split when the token before it is
// a known abbreviation or a single letter. Fragments shorter than
// `min_words` words are merged into the previous sentence (the next one, for
// a leading fragment). Throws Error{kEmptyInput} for blank text.
SentenceSet split_sentences(std::string_view text, const AbbreviationSet& abbrevs,
                            std::size_t min_words = kDefaultMinSentenceWords);

std::size_t count_words(std::string_view text) noexcept;

}  // namespace newssum
