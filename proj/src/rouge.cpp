#include "newssum/rouge.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "newssum/error.hpp"
#include "newssum/vectorizer.hpp"

namespace newssum {
namespace {

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts count_ngrams(std::span<const std::string> tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string_view> gram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                       tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++counts[std::move(gram)];
  }
  return counts;
}

double ratio(std::size_t num, std::size_t den) noexcept {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

nlohmann::json score_json(const RougeScore& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

}  // namespace

RougeScore RougeScore::from_pr(double precision, double recall) noexcept {
  const double denom = precision + recall;
  return {precision, recall, denom == 0.0 ? 0.0 : 2.0 * precision * recall / denom};
}

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "ROUGE-N needs n >= 1");
  const auto cand = count_ngrams(candidate, n);
  const auto ref = count_ngrams(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    if (auto it = ref.find(gram); it != ref.end()) overlap += std::min(count, it->second);
  }
  const std::size_t cand_total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
  const std::size_t ref_total = reference.size() >= n ? reference.size() - n + 1 : 0;
  return RougeScore::from_pr(ratio(overlap, cand_total), ratio(overlap, ref_total));
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference) {
  const auto lcs = lcs_length(candidate, reference);
  return RougeScore::from_pr(ratio(lcs, candidate.size()), ratio(lcs, reference.size()));
}

RougeReport score_pair(std::string_view candidate, std::string_view reference) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
  };
  const auto cand = tokenize_words(lower(candidate));
  const auto ref = tokenize_words(lower(reference));
  return {rouge_n(cand, ref, 1), rouge_n(cand, ref, 2), rouge_l(cand, ref)};
}

nlohmann::json rouge_to_json(const RougeReport& report) {
  return {{"rouge1", score_json(report.rouge1)}, {"rouge2", score_json(report.rouge2)},
          {"rougeL", score_json(report.rougeL)}};
}

}  // namespace newssum
