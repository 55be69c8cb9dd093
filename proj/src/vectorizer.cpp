#include "newssum/vectorizer.hpp"

#include <algorithm>
#include <cmath>

#include "newssum/error.hpp"
#include "newssum/kernels.hpp"

namespace newssum {
namespace {

bool is_edge_punct(char c) noexcept { return c == '.' || c == '!' || c == '?' || c == ','; }

bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    auto token = text.substr(i, j - i);
    while (!token.empty() && is_edge_punct(token.front())) token.remove_prefix(1);
    while (!token.empty() && is_edge_punct(token.back())) token.remove_suffix(1);
    if (!token.empty()) tokens.emplace_back(token);
    i = j;
  }
  return tokens;
}

std::uint32_t Vocabulary::intern(std::string_view term) {
  std::string key(term);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto idx = static_cast<std::uint32_t>(terms_.size());
  terms_.push_back(key);
  index_.emplace(std::move(key), idx);
  return idx;
}

std::int64_t Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

double SparseVector::norm() const noexcept { return std::sqrt(kernels::dot(values, values)); }

double SparseVector::value_sum() const noexcept { return kernels::sum(values); }

SparseVector SparseVector::from_pairs(std::vector<std::pair<std::uint32_t, double>> pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector v;
  v.indices.reserve(pairs.size());
  v.values.reserve(pairs.size());
  for (const auto& [idx, val] : pairs) {
    if (!v.indices.empty() && v.indices.back() == idx) {
      v.values.back() += val;
    } else {
      v.indices.push_back(idx);
      v.values.push_back(val);
    }
  }
  return v;
}

double sparse_dot(const SparseVector& a, const SparseVector& b) noexcept {
  double total = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.indices.size() && j < b.indices.size()) {
    if (a.indices[i] < b.indices[j]) {
      ++i;
    } else if (a.indices[i] > b.indices[j]) {
      ++j;
    } else {
      total += a.values[i] * b.values[j];
      ++i;
      ++j;
    }
  }
  return total;
}

double cosine_similarity(const SparseVector& a, const SparseVector& b) noexcept {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(sparse_dot(a, b) / (na * nb), 0.0, 1.0);
}

double TfIdfModel::idf(std::uint32_t term) const {
  return std::log(static_cast<double>(doc_count) / static_cast<double>(df.at(term)));
}

TfIdfModel fit_tfidf(const SentenceSet& sents) {
  if (sents.empty()) throw Error(ErrorCode::kEmptyInput, "no sentences to vectorize");

  TfIdfModel model;
  model.doc_count = sents.size();

  // Term counts per sentence, in the sentence's first-occurrence order.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> counts(sents.size());
  std::vector<double> word_totals(sents.size(), 0.0);
  for (std::size_t s = 0; s < sents.size(); ++s) {
    auto& row = counts[s];
    for (const auto& token : tokenize_words(sents.sentences[s])) {
      const auto idx = model.vocab.intern(token);
      if (idx >= model.df.size()) model.df.resize(idx + 1, 0);
      auto it = std::find_if(row.begin(), row.end(), [idx](const auto& p) { return p.first == idx; });
      if (it == row.end()) {
        row.emplace_back(idx, 1.0);
        ++model.df[idx];
      } else {
        it->second += 1.0;
      }
      word_totals[s] += 1.0;
    }
  }

  std::vector<double> idf(model.vocab.size());
  for (std::uint32_t t = 0; t < idf.size(); ++t) idf[t] = model.idf(t);

  model.vectors.reserve(sents.size());
  for (std::size_t s = 0; s < sents.size(); ++s) {
    auto& row = counts[s];
    for (auto& [idx, weight] : row) weight = (weight / word_totals[s]) * idf[idx];
    model.vectors.push_back(SparseVector::from_pairs(std::move(row)));
  }
  return model;
}

SimilarityMatrix similarity_matrix(const TfIdfModel& model) {
  const std::size_t n = model.vectors.size();
  SimilarityMatrix m;
  m.n = n;
  m.values.assign(n * n, 0.0);

  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = model.vectors[i].norm();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sim = 0.0;
      if (norms[i] > 0.0 && norms[j] > 0.0) {
        sim = std::clamp(sparse_dot(model.vectors[i], model.vectors[j]) / (norms[i] * norms[j]), 0.0, 1.0);
      }
      m.values[i * n + j] = sim;
      m.values[j * n + i] = sim;
    }
  }
  return m;
}

}  // namespace newssum
