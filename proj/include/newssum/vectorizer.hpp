#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "newssum/segmenter.hpp"

namespace newssum {

// Whitespace split with {. ! ? ,} stripped from token edges; empty tokens
// are dropped. Shared by the vectorizer and the ROUGE scorer.
std::vector<std::string> tokenize_words(std::string_view text);

class Vocabulary {
 public:
  // Returns the index of `term`, inserting it at the end if new.
  std::uint32_t intern(std::string_view term);
  // -1 when absent.
  std::int64_t find(std::string_view term) const;

  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Sparse vector with strictly increasing indices. Indices and values are
// kept in separate arrays so value-only reductions (norm, sum) run on the
// dense kernels.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  std::size_t nnz() const noexcept { return indices.size(); }
  double norm() const noexcept;
  double value_sum() const noexcept;
  // Builds from unsorted (index, value) pairs; duplicate indices are summed.
  static SparseVector from_pairs(std::vector<std::pair<std::uint32_t, double>> pairs);
};

double sparse_dot(const SparseVector& a, const SparseVector& b) noexcept;

// dot(a, b) / (|a| |b|), clamped to [0, 1]; 0 when either norm is 0.
double cosine_similarity(const SparseVector& a, const SparseVector& b) noexcept;

// Per-article TF-IDF where each sentence is a document.
// TF(w, s) = count(w in s) / words(s); IDF(w) = ln(N / df(w)).
struct TfIdfModel {
  Vocabulary vocab;  // first-occurrence order
  std::size_t doc_count = 0;
  std::vector<std::uint32_t> df;  // by term index
  std::vector<SparseVector> vectors;

  double idf(std::uint32_t term) const;
};

TfIdfModel fit_tfidf(const SentenceSet& sents);

// Row-major n x n matrix of pairwise cosine similarities with a zero
// diagonal.
struct SimilarityMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const noexcept { return values[i * n + j]; }
  const double* row(std::size_t i) const noexcept { return values.data() + i * n; }
};

SimilarityMatrix similarity_matrix(const TfIdfModel& model);

}  // namespace newssum
