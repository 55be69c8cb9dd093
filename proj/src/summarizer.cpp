#include "newssum/summarizer.hpp"

#include <algorithm>
#include <chrono>

#include "newssum/error.hpp"

namespace newssum {

RankedSentences rank_sentences(const SentenceSet& sents, Method method, const SummarizerDeps& deps) {
  switch (method) {
    case Method::kBaseline:
      return score_baseline(fit_tfidf(sents));
    case Method::kGraph:
      return score_graph(sents, deps.pagerank);
    case Method::kHybrid:
      if (deps.hybrid == nullptr) throw Error(ErrorCode::kMissingModel, "hybrid method requires a trained model");
      return score_hybrid(sents, deps.hybrid->forest, deps.hybrid->space);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method");
}

Summary summarize(const SummaryRequest& req, const SummarizerDeps& deps) {
  const auto start = std::chrono::steady_clock::now();
  if (req.top_k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be at least 1");
  if (req.method == Method::kHybrid && deps.hybrid == nullptr) {
    throw Error(ErrorCode::kMissingModel, "hybrid method requires a trained model");
  }

  const auto sents = deps.pipeline.sentences(req.text);
  if (deps.max_sentences != 0 && sents.size() > deps.max_sentences) {
    throw Error(ErrorCode::kTooManySentences, std::to_string(sents.size()) + " sentences exceeds the limit of " +
                                                  std::to_string(deps.max_sentences));
  }
  const auto ranked = rank_sentences(sents, req.method, deps);

  Summary out;
  out.method = req.method;
  out.sentence_count = sents.size();
  const auto k = std::min(req.top_k, sents.size());
  for (std::size_t r = 0; r < k; ++r) {
    const auto idx = ranked.ranking[r];
    out.chosen.push_back({idx, ranked.scores[idx], sents.sentences[idx]});
    if (!out.text.empty()) out.text.push_back(' ');
    out.text += sents.sentences[idx];
  }
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

nlohmann::json summary_to_json(const Summary& summary) {
  auto sentences = nlohmann::json::array();
  for (const auto& c : summary.chosen) {
    sentences.push_back({{"index", c.index}, {"score", c.score}, {"text", c.text}});
  }
  return {{"summary", summary.text},
          {"sentences", std::move(sentences)},
          {"method", method_name(summary.method)},
          {"elapsed_ms", summary.elapsed_ms}};
}

}  // namespace newssum
