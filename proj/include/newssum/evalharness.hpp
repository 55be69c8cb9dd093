#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "newssum/corpus.hpp"
#include "newssum/rouge.hpp"
#include "newssum/summarizer.hpp"

namespace newssum {

struct EvalConfig {
  std::size_t n_articles = 100;
  std::vector<Method> methods{Method::kBaseline, Method::kGraph};
  std::size_t top_k = kDefaultTopK;
  std::uint64_t seed = 0;
  std::size_t threads = 1;

  // Throws Error{kInvalidArgument} on n_articles == 0, empty or duplicate
  // methods, or top_k == 0.
  void validate() const;
};

struct TimingStats {
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p95_ms = 0.0;
};

struct MethodResult {
  double rouge1_f1 = 0.0;
  double rouge2_f1 = 0.0;
  double rougeL_f1 = 0.0;
  TimingStats timing;
  std::size_t n_evaluated = 0;
  std::size_t n_skipped = 0;
};

// Scores for one article; `reports` is empty when the article was skipped.
struct ArticleScores {
  std::size_t index = 0;
  std::map<Method, RougeReport> reports;
  std::map<Method, double> elapsed_ms;
};

struct EvalResult {
  EvalConfig config;
  std::size_t n_articles = 0;  // articles actually visited: min(cfg.n_articles, corpus size)
  std::map<Method, MethodResult> per_method;
  std::vector<ArticleScores> articles;  // by article index
};

// Summarises the first cfg.n_articles records with each method and scores
// against the cleaned highlights (macro average of per-article F1). Articles
// whose body or highlights clean to nothing are skipped and counted.
// Throws Error{kEmptyCorpus} and Error{kMissingModel}.
EvalResult evaluate(const CorpusSplit& corpus, const EvalConfig& cfg, const SummarizerDeps& deps);

// Nearest-rank percentile on a copy of `values` (q in [0, 1]).
double percentile(std::vector<double> values, double q);

enum class ReportFormat { kJson, kMarkdown };

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json result_to_json(const EvalResult& result);
EvalResult result_from_json(const nlohmann::json& doc);
// Model | ROUGE-1 | ROUGE-2 | ROUGE-L table plus timing and count columns.
std::string result_to_markdown(const EvalResult& result);

// Throws Error{kIoError}.
void emit_report(const EvalResult& result, const std::filesystem::path& path, ReportFormat format);

}  // namespace newssum
