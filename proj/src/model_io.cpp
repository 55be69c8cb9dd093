#include <fstream>
#include <sstream>

#include "newssum/error.hpp"
#include "newssum/ranker.hpp"

namespace newssum {

using nlohmann::json;

// Layout:
//   {version, n_features, seed, cfg:{trees, max_depth, min_samples_leaf, max_features},
//    trees:[{nodes:[{feat, thresh, left, right} | {leaf_mean}]}],
//    feature_space:{terms:[...], idf:[...]}}
// nlohmann writes doubles in shortest round-trip form, so a reload predicts
// bit-identically.
json model_to_json(const HybridModel& model) {
  const auto& forest = model.forest;
  json trees = json::array();
  for (const auto& tree : forest.trees) {
    json nodes = json::array();
    for (const auto& node : tree.nodes) {
      if (node.is_leaf()) {
        nodes.push_back({{"leaf_mean", node.value}});
      } else {
        nodes.push_back({{"feat", node.feature}, {"thresh", node.threshold}, {"left", node.left}, {"right", node.right}});
      }
    }
    trees.push_back({{"nodes", std::move(nodes)}});
  }

  return json{
      {"version", kModelFormatVersion},
      {"n_features", forest.n_features},
      {"seed", forest.seed},
      {"cfg",
       {{"trees", forest.config.trees},
        {"max_depth", forest.config.max_depth},
        {"min_samples_leaf", forest.config.min_samples_leaf},
        {"max_features", forest.config.max_features}}},
      {"trees", std::move(trees)},
      {"feature_space", {{"terms", model.space.vocab.terms()}, {"idf", model.space.idf}}},
  };
}

HybridModel model_from_json(const json& doc) {
  try {
    if (doc.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorCode::kParseError, "unsupported model version " + doc.at("version").dump());
    }
    HybridModel model;
    auto& forest = model.forest;
    forest.n_features = doc.at("n_features").get<std::size_t>();
    forest.seed = doc.at("seed").get<std::uint64_t>();
    const auto& cfg = doc.at("cfg");
    forest.config.trees = cfg.at("trees").get<std::size_t>();
    forest.config.max_depth = cfg.at("max_depth").get<std::size_t>();
    forest.config.min_samples_leaf = cfg.at("min_samples_leaf").get<std::size_t>();
    forest.config.max_features = cfg.value("max_features", std::size_t{0});

    for (const auto& t : doc.at("trees")) {
      RegressionTree tree;
      const auto& nodes = t.at("nodes");
      for (const auto& n : nodes) {
        TreeNode node;
        if (n.contains("leaf_mean")) {
          node.value = n.at("leaf_mean").get<double>();
        } else {
          node.feature = n.at("feat").get<std::int32_t>();
          node.threshold = n.at("thresh").get<double>();
          node.left = n.at("left").get<std::int32_t>();
          node.right = n.at("right").get<std::int32_t>();
          const auto count = static_cast<std::int32_t>(nodes.size());
          if (node.feature < 0 || static_cast<std::size_t>(node.feature) >= forest.n_features || node.left <= 0 ||
              node.right <= 0 || node.left >= count || node.right >= count) {
            throw Error(ErrorCode::kParseError, "tree node references out of range");
          }
        }
        tree.nodes.push_back(node);
      }
      if (tree.nodes.empty()) throw Error(ErrorCode::kParseError, "tree has no nodes");
      forest.trees.push_back(std::move(tree));
    }
    if (forest.trees.empty()) throw Error(ErrorCode::kParseError, "model has no trees");

    const auto& fs = doc.at("feature_space");
    for (const auto& term : fs.at("terms")) model.space.vocab.intern(term.get<std::string>());
    model.space.idf = fs.at("idf").get<std::vector<double>>();
    if (model.space.idf.size() != model.space.vocab.size()) {
      throw Error(ErrorCode::kParseError, "feature space terms and idf differ in length");
    }
    return model;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed model file: ") + e.what());
  }
}

std::string serialize_model(const HybridModel& model) { return model_to_json(model).dump() + "\n"; }

void save_model(const HybridModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << serialize_model(model);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

HybridModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const auto doc = json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw Error(ErrorCode::kParseError, "model file is not valid JSON: " + path.string());
  return model_from_json(doc);
}

}  // namespace newssum
