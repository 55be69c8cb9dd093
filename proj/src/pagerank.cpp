#include <algorithm>
#include <numeric>

#include "newssum/error.hpp"
#include "newssum/kernels.hpp"
#include "newssum/ranker.hpp"

namespace newssum {

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::kBaseline:
      return "baseline";
    case Method::kGraph:
      return "graph";
    case Method::kHybrid:
      return "hybrid";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "baseline") return Method::kBaseline;
  if (name == "graph") return Method::kGraph;
  if (name == "hybrid") return Method::kHybrid;
  return std::nullopt;
}

SentenceGraph SentenceGraph::from_similarity(SimilarityMatrix m) {
  SentenceGraph g;
  g.n = m.n;
  g.weights = std::move(m.values);
  for (std::size_t i = 0; i < g.n; ++i) g.weights[i * g.n + i] = 0.0;
  return g;
}

void SentenceGraph::validate() const {
  if (weights.size() != n * n) throw Error(ErrorCode::kInvalidArgument, "graph weight matrix has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i * n + i] != 0.0) throw Error(ErrorCode::kInvalidArgument, "graph has a self loop");
    for (std::size_t j = 0; j < n; ++j) {
      const double w = weights[i * n + j];
      if (!(w >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "graph weight is negative or NaN");
      if (w != weights[j * n + i]) throw Error(ErrorCode::kInvalidArgument, "graph weights are not symmetric");
    }
  }
}

void PageRankParams::validate() const {
  if (!(damping > 0.0 && damping < 1.0)) throw Error(ErrorCode::kInvalidArgument, "damping must be in (0, 1)");
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  if (max_iters < 1) throw Error(ErrorCode::kInvalidArgument, "max_iters must be at least 1");
}

std::vector<double> pagerank(const SentenceGraph& graph, const PageRankParams& params) {
  params.validate();
  const std::size_t n = graph.n;
  if (n == 0) return {};
  if (graph.weights.size() != n * n) throw Error(ErrorCode::kInvalidArgument, "graph weight matrix has wrong size");

  const double d = params.damping;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> out_weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    out_weight[i] = kernels::sum(std::span<const double>(graph.weights.data() + i * n, n));
  }

  std::vector<double> p(n, inv_n);
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < params.max_iters; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    double dangling = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (out_weight[i] > 0.0) {
        kernels::axpy(d * p[i] / out_weight[i], std::span<const double>(graph.weights.data() + i * n, n), next);
      } else {
        dangling += p[i];
      }
    }
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    for (auto& v : next) v += base;

    const double change = kernels::l1_distance(next, p);
    p.swap(next);
    if (change < params.tol) break;
  }

  const double total = kernels::sum(p);
  for (auto& v : p) v /= total;
  return p;
}

std::vector<std::size_t> rank_descending(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

RankedSentences score_baseline(const TfIdfModel& model) {
  if (model.vectors.empty()) throw Error(ErrorCode::kEmptyInput, "no sentences to score");
  RankedSentences out;
  out.method = Method::kBaseline;
  out.scores.reserve(model.vectors.size());
  for (const auto& v : model.vectors) out.scores.push_back(v.value_sum());
  out.ranking = rank_descending(out.scores);
  return out;
}

RankedSentences score_graph(const SentenceSet& sents, const PageRankParams& params) {
  const auto model = fit_tfidf(sents);
  const auto graph = SentenceGraph::from_similarity(similarity_matrix(model));
  RankedSentences out;
  out.method = Method::kGraph;
  out.scores = pagerank(graph, params);
  out.ranking = rank_descending(out.scores);
  return out;
}

}  // namespace newssum
