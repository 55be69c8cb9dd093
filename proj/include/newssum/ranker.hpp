#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "newssum/corpus.hpp"
#include "newssum/pipeline.hpp"
#include "newssum/vectorizer.hpp"

namespace newssum {

enum class Method { kBaseline, kGraph, kHybrid };

std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

// ---------------------------------------------------------------------------
// PageRank

// Symmetric, nonnegative, zero-diagonal weights (row-major n x n).
struct SentenceGraph {
  std::size_t n = 0;
  std::vector<double> weights;

  static SentenceGraph from_similarity(SimilarityMatrix m);
  // Throws Error{kInvalidArgument} if the matrix is not a valid graph.
  void validate() const;
};

struct PageRankParams {
  double damping = 0.85;
  double tol = 1e-6;  // L1 change between iterates
  std::size_t max_iters = 100;

  void validate() const;
};

// Power iteration p' = (1-d)/n + d * W^T p with W the row-normalised weight
// matrix; zero-weight rows spread their mass uniformly. Returns a vector
// summing to 1.
std::vector<double> pagerank(const SentenceGraph& graph, const PageRankParams& params = {});

// ---------------------------------------------------------------------------
// Sentence scoring

struct RankedSentences {
  std::vector<double> scores;
  Method method = Method::kBaseline;
  std::vector<std::size_t> ranking;  // stable argsort of scores, descending
};

// Stable descending argsort: equal scores keep original order.
std::vector<std::size_t> rank_descending(std::span<const double> scores);

RankedSentences score_baseline(const TfIdfModel& model);
RankedSentences score_graph(const SentenceSet& sents, const PageRankParams& params = {});

// ---------------------------------------------------------------------------
// Hybrid: regression forest trained on PageRank targets

// Top-V sentence-level document-frequency terms over a training corpus.
struct HybridFeatureSpace {
  Vocabulary vocab;
  std::vector<double> idf;  // by vocab index, all > 0

  std::size_t dimension() const noexcept { return vocab.size(); }
};

inline constexpr std::size_t kDefaultVocabSize = 5000;

// Ranks terms by df descending then lexicographically; terms that occur in
// every training sentence (idf 0) are excluded.
HybridFeatureSpace build_feature_space(const CorpusSplit& train, std::size_t vocab_size,
                                       const TextPipeline& pipeline = {});

// TF within the sentence (over all its words) times the global idf,
// restricted to the feature vocabulary.
SparseVector featurize(std::string_view sentence, const HybridFeatureSpace& space);

struct ForestConfig {
  std::size_t trees = 50;
  std::size_t max_depth = 12;
  std::size_t min_samples_leaf = 2;
  std::size_t max_features = 0;  // 0 means ceil(sqrt(V))
  std::size_t threads = 1;       // results do not depend on this

  void validate() const;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // x[feature] <= threshold goes left
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;  // leaf mean

  bool is_leaf() const noexcept { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  // Index of the leaf that `x` routes to.
  std::size_t leaf_for(const SparseVector& x) const;
  double predict(const SparseVector& x) const { return nodes[leaf_for(x)].value; }
};

struct RegressionForest {
  std::vector<RegressionTree> trees;
  std::size_t n_features = 0;
  std::uint64_t seed = 0;
  ForestConfig config;

  double predict(const SparseVector& x) const;
};

struct TrainingSet {
  std::vector<SparseVector> features;
  std::vector<double> targets;
  std::size_t n_features = 0;
  std::size_t articles_used = 0;
};

// Runs the graph ranker on every training article and pairs each sentence's
// features with its PageRank score. Articles that fail segmentation are
// skipped.
TrainingSet build_training_set(const CorpusSplit& train, const HybridFeatureSpace& space,
                               const TextPipeline& pipeline = {}, const PageRankParams& params = {});

// One tree grown on `samples` (row indices into `data`, repeats allowed).
// Splits minimise the weighted target variance over a random subset of the
// features that are nonzero at the node.
RegressionTree fit_tree(const TrainingSet& data, std::span<const std::uint32_t> samples, const ForestConfig& cfg,
                        std::uint64_t stream_seed);

// Deterministic in `seed`: tree t draws from its own stream derived from
// (seed, t), so the result is independent of `cfg.threads`.
RegressionForest fit_forest(const TrainingSet& data, const ForestConfig& cfg, std::uint64_t seed);

// build_training_set + fit_forest. Throws Error{kEmptyInput} when no
// training sentence is available.
RegressionForest train_forest(const CorpusSplit& train, const HybridFeatureSpace& space, const ForestConfig& cfg,
                              std::uint64_t seed, const TextPipeline& pipeline = {},
                              const PageRankParams& params = {});

// Throws Error{kFeatureSpaceMismatch} when the forest was trained for a
// different dimension.
RankedSentences score_hybrid(const SentenceSet& sents, const RegressionForest& forest,
                             const HybridFeatureSpace& space);

// Bootstrap row draw used by fit_forest for tree `tree_index`.
std::vector<std::uint32_t> bootstrap_sample(std::size_t rows, std::uint64_t seed, std::size_t tree_index);

// Per-tree stream seed (SplitMix64 of seed and tree index).
std::uint64_t tree_stream_seed(std::uint64_t seed, std::size_t tree_index) noexcept;

// ---------------------------------------------------------------------------
// Model file: versioned JSON holding the forest and its feature space.

inline constexpr int kModelFormatVersion = 1;

struct HybridModel {
  RegressionForest forest;
  HybridFeatureSpace space;
};

nlohmann::json model_to_json(const HybridModel& model);
HybridModel model_from_json(const nlohmann::json& doc);
std::string serialize_model(const HybridModel& model);
void save_model(const HybridModel& model, const std::filesystem::path& path);
HybridModel load_model(const std::filesystem::path& path);

}  // namespace newssum
