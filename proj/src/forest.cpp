#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <thread>

#include "newssum/error.hpp"
#include "newssum/ranker.hpp"

namespace newssum {
namespace {

// Streams are std::mt19937_64 (bit-exact across standard libraries) seeded
// through SplitMix64. Bounded draws use rejection sampling rather than
// std::uniform_int_distribution, whose output is implementation-defined.
std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

double feature_value(const SparseVector& x, std::uint32_t feature) noexcept {
  auto it = std::lower_bound(x.indices.begin(), x.indices.end(), feature);
  if (it == x.indices.end() || *it != feature) return 0.0;
  return x.values[static_cast<std::size_t>(it - x.indices.begin())];
}

struct Entry {
  std::uint32_t feature;
  double value;
  double target;
};

struct Split {
  std::uint32_t feature = 0;
  double threshold = 0.0;
  double score = 0.0;
  bool found = false;
};

class TreeBuilder {
 public:
  TreeBuilder(const TrainingSet& data, const ForestConfig& cfg, std::uint64_t stream_seed)
      : data_(data), cfg_(cfg), rng_(stream_seed) {
    max_features_ = cfg.max_features != 0
                        ? cfg.max_features
                        : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(data.n_features))));
    if (max_features_ == 0) max_features_ = 1;
  }

  RegressionTree build(std::vector<std::uint32_t> rows) {
    RegressionTree tree;
    tree.nodes.emplace_back();
    grow(tree, 0, std::move(rows), 0);
    return tree;
  }

 private:
  void grow(RegressionTree& tree, std::size_t node_index, std::vector<std::uint32_t> rows, std::size_t depth) {
    double total = 0.0;
    for (const auto r : rows) total += data_.targets[r];
    const double count = static_cast<double>(rows.size());
    const double mean = rows.empty() ? 0.0 : total / count;

    Split split;
    if (depth < cfg_.max_depth && rows.size() >= 2 * cfg_.min_samples_leaf && !constant_targets(rows)) {
      split = best_split(rows, total);
    }
    if (!split.found) {
      tree.nodes[node_index].value = mean;
      return;
    }

    std::vector<std::uint32_t> left_rows, right_rows;
    for (const auto r : rows) {
      (feature_value(data_.features[r], split.feature) <= split.threshold ? left_rows : right_rows).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const auto left = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    const auto right = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    auto& node = tree.nodes[node_index];
    node.feature = static_cast<std::int32_t>(split.feature);
    node.threshold = split.threshold;
    node.left = left;
    node.right = right;
    node.value = mean;

    grow(tree, static_cast<std::size_t>(left), std::move(left_rows), depth + 1);
    grow(tree, static_cast<std::size_t>(right), std::move(right_rows), depth + 1);
  }

  bool constant_targets(const std::vector<std::uint32_t>& rows) const {
    const double first = data_.targets[rows.front()];
    return std::all_of(rows.begin(), rows.end(), [&](std::uint32_t r) { return data_.targets[r] == first; });
  }

  Split best_split(const std::vector<std::uint32_t>& rows, double total) {
    // Every nonzero (feature, value) at this node, grouped by feature. A
    // feature that is zero on every row cannot split, so candidates come
    // from this set only.
    entries_.clear();
    for (const auto r : rows) {
      const auto& x = data_.features[r];
      for (std::size_t k = 0; k < x.nnz(); ++k) {
        if (x.values[k] != 0.0) entries_.push_back({x.indices[k], x.values[k], data_.targets[r]});
      }
    }
    if (entries_.empty()) return {};
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
      if (a.feature != b.feature) return a.feature < b.feature;
      if (a.value != b.value) return a.value < b.value;
      return a.target < b.target;
    });

    groups_.clear();
    for (std::size_t i = 0; i < entries_.size();) {
      std::size_t j = i;
      while (j < entries_.size() && entries_[j].feature == entries_[i].feature) ++j;
      groups_.emplace_back(i, j);
      i = j;
    }

    // Partial Fisher-Yates over the candidate groups.
    const std::size_t take = std::min(max_features_, groups_.size());
    for (std::size_t k = 0; k < take; ++k) {
      const auto pick = k + static_cast<std::size_t>(draw_below(rng_, groups_.size() - k));
      std::swap(groups_[k], groups_[pick]);
    }

    const double n = static_cast<double>(rows.size());
    const double parent_score = total * total / n;
    Split best;
    best.score = parent_score;
    for (std::size_t k = 0; k < take; ++k) {
      evaluate_feature(groups_[k].first, groups_[k].second, rows.size(), total, best);
    }
    // Require a real variance reduction, not rounding noise.
    if (best.found && best.score - parent_score <= 1e-15 * std::max(1.0, std::fabs(parent_score))) best.found = false;
    return best;
  }

  // Scans thresholds for one feature. Rows without an entry have value 0,
  // which is below every stored value (features are nonnegative), so the
  // zero block always sits at the left end.
  void evaluate_feature(std::size_t begin, std::size_t end, std::size_t n_rows, double total, Split& best) const {
    double nonzero_sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) nonzero_sum += entries_[i].target;
    const std::size_t nonzero_count = end - begin;
    const std::size_t zero_count = n_rows - nonzero_count;

    std::size_t left_count = zero_count;
    double left_sum = total - nonzero_sum;
    double prev_value = 0.0;
    bool have_prev = zero_count > 0;
    const std::size_t min_leaf = std::max<std::size_t>(cfg_.min_samples_leaf, 1);

    std::size_t i = begin;
    while (i <= end) {
      // Candidate boundary between prev_value and entries_[i].value.
      if (i < end && have_prev && left_count >= min_leaf && n_rows - left_count >= min_leaf) {
        const double next_value = entries_[i].value;
        const double right_sum = total - left_sum;
        const double score = left_sum * left_sum / static_cast<double>(left_count) +
                             right_sum * right_sum / static_cast<double>(n_rows - left_count);
        if (score > best.score) {
          double threshold = prev_value + (next_value - prev_value) / 2.0;
          if (!(threshold >= prev_value && threshold < next_value)) threshold = prev_value;
          best = {entries_[i].feature, threshold, score, true};
        }
      }
      if (i == end) break;
      const double value = entries_[i].value;
      while (i < end && entries_[i].value == value) {
        left_sum += entries_[i].target;
        ++left_count;
        ++i;
      }
      prev_value = value;
      have_prev = true;
    }
  }

  const TrainingSet& data_;
  const ForestConfig& cfg_;
  std::mt19937_64 rng_;
  std::size_t max_features_ = 1;
  std::vector<Entry> entries_;
  std::vector<std::pair<std::size_t, std::size_t>> groups_;
};

}  // namespace

void ForestConfig::validate() const {
  if (trees < 1) throw Error(ErrorCode::kInvalidArgument, "forest needs at least one tree");
  if (min_samples_leaf < 1) throw Error(ErrorCode::kInvalidArgument, "min_samples_leaf must be at least 1");
}

std::uint64_t tree_stream_seed(std::uint64_t seed, std::size_t tree_index) noexcept {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(tree_index));
}

std::vector<std::uint32_t> bootstrap_sample(std::size_t rows, std::uint64_t seed, std::size_t tree_index) {
  // Separate stream from the tree's split stream.
  std::mt19937_64 rng(splitmix64(tree_stream_seed(seed, tree_index) ^ 0xB0075742A9ULL));
  std::vector<std::uint32_t> sample(rows);
  for (auto& s : sample) s = static_cast<std::uint32_t>(draw_below(rng, rows));
  return sample;
}

std::size_t RegressionTree::leaf_for(const SparseVector& x) const {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& node = nodes[i];
    const double v = feature_value(x, static_cast<std::uint32_t>(node.feature));
    i = static_cast<std::size_t>(v <= node.threshold ? node.left : node.right);
  }
  return i;
}

double RegressionForest::predict(const SparseVector& x) const {
  if (trees.empty()) throw Error(ErrorCode::kMissingModel, "forest has no trees");
  double total = 0.0;
  for (const auto& t : trees) total += t.predict(x);
  return total / static_cast<double>(trees.size());
}

RegressionTree fit_tree(const TrainingSet& data, std::span<const std::uint32_t> samples, const ForestConfig& cfg,
                        std::uint64_t stream_seed) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "tree needs at least one sample");
  TreeBuilder builder(data, cfg, stream_seed);
  return builder.build(std::vector<std::uint32_t>(samples.begin(), samples.end()));
}

RegressionForest fit_forest(const TrainingSet& data, const ForestConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (data.targets.empty()) throw Error(ErrorCode::kEmptyInput, "no training samples");
  if (data.features.size() != data.targets.size()) {
    throw Error(ErrorCode::kInvalidArgument, "feature and target counts differ");
  }

  RegressionForest forest;
  forest.n_features = data.n_features;
  forest.seed = seed;
  forest.config = cfg;
  forest.trees.resize(cfg.trees);

  auto fit_one = [&](std::size_t t) {
    const auto sample = bootstrap_sample(data.targets.size(), seed, t);
    forest.trees[t] = fit_tree(data, sample, cfg, tree_stream_seed(seed, t));
  };

  const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, cfg.trees);
  if (workers == 1) {
    for (std::size_t t = 0; t < cfg.trees; ++t) fit_one(t);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < cfg.trees; t += workers) fit_one(t);
      });
    }
  }
  return forest;
}

HybridFeatureSpace build_feature_space(const CorpusSplit& train, std::size_t vocab_size, const TextPipeline& pipeline) {
  if (train.empty()) throw Error(ErrorCode::kEmptyInput, "training split is empty");
  if (vocab_size < 1) throw Error(ErrorCode::kInvalidArgument, "vocabulary size must be at least 1");

  std::map<std::string, std::size_t, std::less<>> df;
  std::size_t total_sentences = 0;
  for (const auto& rec : train.records) {
    SentenceSet sents;
    try {
      sents = pipeline.sentences(rec.article);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kEmptyInput) continue;
      throw;
    }
    for (const auto& s : sents.sentences) {
      auto tokens = tokenize_words(s);
      std::sort(tokens.begin(), tokens.end());
      tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
      for (auto& t : tokens) ++df[std::move(t)];
      ++total_sentences;
    }
  }
  if (total_sentences == 0) throw Error(ErrorCode::kEmptyInput, "no training sentences survived cleaning");

  std::vector<std::pair<std::string_view, std::size_t>> ranked;
  ranked.reserve(df.size());
  for (const auto& [term, count] : df) {
    if (count < total_sentences) ranked.emplace_back(term, count);
  }
  // df descending; std::map order already makes equal-df ties lexicographic.
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > vocab_size) ranked.resize(vocab_size);

  HybridFeatureSpace space;
  space.idf.reserve(ranked.size());
  for (const auto& [term, count] : ranked) {
    space.vocab.intern(term);
    space.idf.push_back(std::log(static_cast<double>(total_sentences) / static_cast<double>(count)));
  }
  return space;
}

SparseVector featurize(std::string_view sentence, const HybridFeatureSpace& space) {
  const auto tokens = tokenize_words(sentence);
  if (tokens.empty()) return {};
  std::vector<std::pair<std::uint32_t, double>> counts;
  for (const auto& t : tokens) {
    const auto idx = space.vocab.find(t);
    if (idx >= 0) counts.emplace_back(static_cast<std::uint32_t>(idx), 1.0);
  }
  auto v = SparseVector::from_pairs(std::move(counts));
  const double words = static_cast<double>(tokens.size());
  for (std::size_t k = 0; k < v.nnz(); ++k) v.values[k] = (v.values[k] / words) * space.idf[v.indices[k]];
  return v;
}

TrainingSet build_training_set(const CorpusSplit& train, const HybridFeatureSpace& space, const TextPipeline& pipeline,
                               const PageRankParams& params) {
  TrainingSet data;
  data.n_features = space.dimension();
  for (const auto& rec : train.records) {
    SentenceSet sents;
    try {
      sents = pipeline.sentences(rec.article);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kEmptyInput) continue;
      throw;
    }
    const auto ranked = score_graph(sents, params);
    for (std::size_t i = 0; i < sents.size(); ++i) {
      data.features.push_back(featurize(sents.sentences[i], space));
      data.targets.push_back(ranked.scores[i]);
    }
    ++data.articles_used;
  }
  return data;
}

RegressionForest train_forest(const CorpusSplit& train, const HybridFeatureSpace& space, const ForestConfig& cfg,
                              std::uint64_t seed, const TextPipeline& pipeline, const PageRankParams& params) {
  if (train.empty()) throw Error(ErrorCode::kEmptyInput, "training split is empty");
  const auto data = build_training_set(train, space, pipeline, params);
  if (data.targets.empty()) throw Error(ErrorCode::kEmptyInput, "no training sentences survived cleaning");
  return fit_forest(data, cfg, seed);
}

RankedSentences score_hybrid(const SentenceSet& sents, const RegressionForest& forest, const HybridFeatureSpace& space) {
  if (forest.n_features != space.dimension()) {
    throw Error(ErrorCode::kFeatureSpaceMismatch, "forest expects " + std::to_string(forest.n_features) +
                                                      " features, feature space has " +
                                                      std::to_string(space.dimension()));
  }
  if (sents.empty()) throw Error(ErrorCode::kEmptyInput, "no sentences to score");
  RankedSentences out;
  out.method = Method::kHybrid;
  out.scores.reserve(sents.size());
  for (const auto& s : sents.sentences) out.scores.push_back(forest.predict(featurize(s, space)));
  out.ranking = rank_descending(out.scores);
  return out;
}

}  // namespace newssum
