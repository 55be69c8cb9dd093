#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "newssum/pipeline.hpp"
#include "newssum/ranker.hpp"

namespace newssum {

inline constexpr std::size_t kDefaultTopK = 3;

struct SummaryRequest {
  std::string text;
  Method method = Method::kGraph;
  std::size_t top_k = kDefaultTopK;
};

struct ChosenSentence {
  std::size_t index = 0;  // position in the cleaned article
  double score = 0.0;
  std::string text;
};

struct Summary {
  std::string text;
  std::vector<ChosenSentence> chosen;  // descending score
  Method method = Method::kGraph;
  std::size_t sentence_count = 0;
  double elapsed_ms = 0.0;
};

// Everything summarize() needs besides the request. The hybrid model is
// borrowed and must outlive the call.
struct SummarizerDeps {
  TextPipeline pipeline;
  PageRankParams pagerank;
  const HybridModel* hybrid = nullptr;
  std::size_t max_sentences = 0;  // 0 = unlimited
};

// clean -> segment -> score -> top_k by score (stable ties) -> join with
// single spaces in descending-score order. Throws Error{kEmptyInput},
// Error{kMissingModel} (hybrid without a model), Error{kTooManySentences}
// and Error{kInvalidArgument} (top_k == 0).
Summary summarize(const SummaryRequest& req, const SummarizerDeps& deps);

// Scoring only, for callers that already have sentences.
RankedSentences rank_sentences(const SentenceSet& sents, Method method, const SummarizerDeps& deps);

// {summary, sentences:[{index, score, text}], method, elapsed_ms}
nlohmann::json summary_to_json(const Summary& summary);

}  // namespace newssum
