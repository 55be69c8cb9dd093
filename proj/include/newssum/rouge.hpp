#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

namespace newssum {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // Harmonic mean, 0 when precision + recall == 0.
  static RougeScore from_pr(double precision, double recall) noexcept;
};

struct RougeReport {
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rougeL;
};

// Clipped n-gram overlap: C = sum_g min(cand(g), ref(g)); precision C/|cand
// n-grams|, recall C/|ref n-grams|. n must be >= 1.
RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, std::size_t n);

// Longest common subsequence over the whole token sequences.
RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// Lowercases and tokenizes both texts with the vectorizer's rule, then
// computes ROUGE-1, ROUGE-2 and ROUGE-L.
RougeReport score_pair(std::string_view candidate, std::string_view reference);

nlohmann::json rouge_to_json(const RougeReport& report);

}  // namespace newssum
