#include "newssum/segmenter.hpp"

#include <fstream>
#include <sstream>

#include "builtin_data.hpp"
#include "newssum/error.hpp"

namespace newssum {
namespace {

bool is_terminal(char c) noexcept { return c == '.' || c == '!' || c == '?'; }

bool is_letter(char c) noexcept { return c >= 'a' && c <= 'z'; }

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// The token ending just before `period` (exclusive), without leading commas.
std::string_view token_before(std::string_view text, std::size_t period) noexcept {
  std::size_t begin = period;
  while (begin > 0 && text[begin - 1] != ' ') --begin;
  auto token = text.substr(begin, period - begin);
  while (!token.empty() && token.front() == ',') token.remove_prefix(1);
  return token;
}

bool guarded_period(std::string_view text, std::size_t period, const AbbreviationSet& abbrevs) {
  const auto token = token_before(text, period);
  if (token.empty()) return false;
  if (token.size() == 1 && is_letter(token.front())) return true;
  return abbrevs.contains(token);
}

void append_sentence(std::string& dst, std::string_view piece) {
  if (!dst.empty()) dst.push_back(' ');
  dst.append(piece);
}

}  // namespace

AbbreviationSet::AbbreviationSet(std::set<std::string, std::less<>> entries) : entries_(std::move(entries)) {}

AbbreviationSet AbbreviationSet::parse(std::string_view content) {
  std::set<std::string, std::less<>> entries;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    auto entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    if (entry.back() == '.') entry.remove_suffix(1);
    std::string lowered(entry);
    for (auto& c : lowered) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    entries.insert(std::move(lowered));
  }
  if (entries.empty()) throw Error(ErrorCode::kInvalidArgument, "abbreviation list is empty");
  return AbbreviationSet(std::move(entries));
}

AbbreviationSet AbbreviationSet::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

const AbbreviationSet& AbbreviationSet::builtin() {
  static const AbbreviationSet set = parse(detail::kBuiltinAbbreviations);
  return set;
}

std::size_t count_words(std::string_view text) noexcept {
  std::size_t words = 0;
  bool in_word = false;
  for (const char c : text) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

SentenceSet split_sentences(std::string_view text, const AbbreviationSet& abbrevs, std::size_t min_words) {
  text = trim(text);
  if (text.empty()) throw Error(ErrorCode::kEmptyInput, "no text to segment");
  if (min_words == 0) min_words = 1;

  std::vector<std::string_view> pieces;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < text.size() && is_terminal(text[run_end])) ++run_end;
    const bool at_boundary = run_end == text.size() || text[run_end] == ' ';
    const bool lone_period = run_end - i == 1 && text[i] == '.';
    if (at_boundary && !(lone_period && guarded_period(text, i, abbrevs))) {
      auto piece = trim(text.substr(start, run_end - start));
      if (!piece.empty()) pieces.push_back(piece);
      start = run_end;
    }
    i = run_end;
  }
  if (auto tail = trim(text.substr(start)); !tail.empty()) pieces.push_back(tail);

  std::vector<std::string> merged;
  for (const auto piece : pieces) {
    if (!merged.empty() && count_words(piece) < min_words) {
      append_sentence(merged.back(), piece);
    } else {
      merged.emplace_back(piece);
    }
  }
  if (merged.size() > 1 && count_words(merged.front()) < min_words) {
    std::string joined = std::move(merged.front());
    append_sentence(joined, merged[1]);
    merged[1] = std::move(joined);
    merged.erase(merged.begin());
  }

  SentenceSet out;
  out.sentences = std::move(merged);
  out.positions.resize(out.sentences.size());
  for (std::size_t k = 0; k < out.positions.size(); ++k) out.positions[k] = k;
  return out;
}

}  // namespace newssum
