#include "newssum/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "builtin_data.hpp"
#include "newssum/error.hpp"

namespace newssum {
namespace {

bool is_ascii_alnum(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool at_word_start(std::string_view s, std::size_t i) noexcept { return i == 0 || !is_ascii_alnum(s[i - 1]); }

bool at_word_end(std::string_view s, std::size_t i) noexcept { return i >= s.size() || !is_ascii_alnum(s[i]); }

// ASCII lowercase; typographic quotes U+2018/U+2019 become ' and U+201C/U+201D
// become " so later steps see one apostrophe form.
std::string lowercase(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const char c = in[i];
    if (c == '\xE2' && i + 2 < in.size() && in[i + 1] == '\x80') {
      const char third = in[i + 2];
      if (third == '\x98' || third == '\x99') {
        out.push_back('\'');
        i += 2;
        continue;
      }
      if (third == '\x9C' || third == '\x9D') {
        out.push_back('"');
        i += 2;
        continue;
      }
    }
    out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

std::string expand_contractions(std::string_view in, const ContractionTable& table) {
  std::string out;
  out.reserve(in.size() + in.size() / 8);
  std::size_t i = 0;
  while (i < in.size()) {
    if (at_word_start(in, i) && (is_ascii_alnum(in[i]) || in[i] == '\'')) {
      bool matched = false;
      for (const auto& [key, expansion] : table.entries()) {
        if (in.compare(i, key.size(), key) == 0 && at_word_end(in, i + key.size())) {
          out += expansion;
          i += key.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    if (i > 0 && is_ascii_alnum(in[i - 1]) && in.compare(i, 3, "n't") == 0 && at_word_end(in, i + 3)) {
      out += " not";
      i += 3;
      continue;
    }
    out.push_back(in[i]);
    ++i;
  }
  return out;
}

bool url_starts_at(std::string_view s, std::size_t i) noexcept {
  if (!at_word_start(s, i)) return false;
  const auto rest = s.substr(i);
  return rest.starts_with("http://") || rest.starts_with("https://") || rest.starts_with("www.");
}

std::string strip_urls(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    if (url_starts_at(in, i)) {
      while (i < in.size() && !is_space(in[i])) ++i;
      out.push_back(' ');
      continue;
    }
    out.push_back(in[i]);
    ++i;
  }
  return out;
}

// A tag is '<' directly followed by a letter, '/' or '!' and closed by '>'.
// Anything else ("a < b") is left for the special-character step.
std::string strip_markup(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    if (in[i] == '<' && i + 1 < in.size()) {
      const char next = in[i + 1];
      if ((next >= 'a' && next <= 'z') || next == '/' || next == '!') {
        const auto close = in.find('>', i + 1);
        if (close != std::string_view::npos) {
          out.push_back(' ');
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(in[i]);
    ++i;
  }
  return out;
}

bool kept_by_special_filter(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ' ' || c == '.' || c == '!' || c == '?' ||
         c == ',' || c == '\'' || c == '"';
}

std::string remove_special_characters(std::string_view in) {
  std::string out(in);
  for (auto& c : out) {
    if (!kept_by_special_filter(c)) c = ' ';
  }
  return out;
}

std::string remove_quotes(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  for (const char c : in) {
    if (c != '\'' && c != '"') out.push_back(c);
  }
  return out;
}

std::string collapse_whitespace(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  bool pending_space = false;
  for (const char c : in) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string trim_copy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string_view clean_step_name(CleanStep step) noexcept {
  switch (step) {
    case CleanStep::kLowercase:
      return "lowercase";
    case CleanStep::kExpandContractions:
      return "expand_contractions";
    case CleanStep::kStripUrls:
      return "strip_urls";
    case CleanStep::kStripMarkup:
      return "strip_markup";
    case CleanStep::kRemoveSpecialCharacters:
      return "remove_special_characters";
    case CleanStep::kRemoveQuotes:
      return "remove_quotes";
    case CleanStep::kCollapseWhitespace:
      return "collapse_whitespace";
  }
  return "unknown";
}

void ContractionTable::add(std::string_view contraction, std::string_view expansion) {
  std::string key = lowercase(trim_copy(contraction));
  std::string value = lowercase(trim_copy(expansion));
  if (key.empty() || key.find('\'') == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "contraction key must contain an apostrophe: '" + key + "'");
  }
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return (c >= 'a' && c <= 'z') || c == ' '; })) {
    throw Error(ErrorCode::kInvalidArgument, "expansion must be letters and spaces: '" + value + "'");
  }
  if (find(key) != nullptr) throw Error(ErrorCode::kInvalidArgument, "duplicate contraction: '" + key + "'");

  entries_.emplace_back(std::move(key), std::move(value));
  std::stable_sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
}

const std::string* ContractionTable::find(std::string_view key) const noexcept {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

ContractionTable ContractionTable::parse(std::string_view content) {
  ContractionTable table;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto trimmed = trim_copy(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParseError, "contraction table line " + std::to_string(line_no) + " has no tab");
    }
    table.add(std::string_view(line).substr(0, tab), std::string_view(line).substr(tab + 1));
  }
  return table;
}

ContractionTable ContractionTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

const ContractionTable& ContractionTable::builtin() {
  static const ContractionTable table = parse(detail::kBuiltinContractions);
  return table;
}

CleanText clean(std::string_view raw, const ContractionTable& table) {
  CleanText result;
  auto& steps = result.steps_applied;

  std::string text = lowercase(raw);
  steps.push_back(CleanStep::kLowercase);
  text = expand_contractions(text, table);
  steps.push_back(CleanStep::kExpandContractions);
  text = strip_urls(text);
  steps.push_back(CleanStep::kStripUrls);
  text = strip_markup(text);
  steps.push_back(CleanStep::kStripMarkup);
  text = remove_special_characters(text);
  steps.push_back(CleanStep::kRemoveSpecialCharacters);
  text = remove_quotes(text);
  steps.push_back(CleanStep::kRemoveQuotes);
  // Deleting quotes can re-join a "www." prefix ("ww'w.x"), so links are
  // stripped once more before collapsing.
  text = collapse_whitespace(strip_urls(text));
  steps.push_back(CleanStep::kCollapseWhitespace);

  result.text = std::move(text);
  return result;
}

std::pair<CleanText, CleanText> clean_record(const ArticleRecord& rec, const ContractionTable& table) {
  return {clean(rec.article, table), clean(rec.highlights, table)};
}

}  // namespace newssum
