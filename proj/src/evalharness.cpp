#include "newssum/evalharness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <mutex>
#include <thread>

#include "newssum/error.hpp"

namespace newssum {
namespace {

using nlohmann::json;

ArticleScores evaluate_article(const ArticleRecord& rec, std::size_t index, const EvalConfig& cfg,
                               const SummarizerDeps& deps) {
  ArticleScores scores;
  scores.index = index;
  const auto reference = deps.pipeline.clean(rec.highlights).text;
  if (reference.empty()) return scores;
  for (const auto method : cfg.methods) {
    Summary summary;
    try {
      summary = summarize({rec.article, method, cfg.top_k}, deps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyInput) throw;
      scores.reports.clear();
      scores.elapsed_ms.clear();
      return scores;
    }
    scores.reports[method] = score_pair(summary.text, reference);
    scores.elapsed_ms[method] = summary.elapsed_ms;
  }
  return scores;
}

json score_to_json(const RougeScore& s) { return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}}; }

RougeScore score_from_json(const json& j) {
  return {j.at("precision").get<double>(), j.at("recall").get<double>(), j.at("f1").get<double>()};
}

Method method_from_json(const json& j) {
  const auto name = j.get<std::string>();
  const auto m = parse_method(name);
  if (!m) throw Error(ErrorCode::kParseError, "unknown method in report: " + name);
  return *m;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

void EvalConfig::validate() const {
  if (n_articles < 1) throw Error(ErrorCode::kInvalidArgument, "n_articles must be at least 1");
  if (methods.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one method is required");
  if (std::set<Method>(methods.begin(), methods.end()).size() != methods.size()) {
    throw Error(ErrorCode::kInvalidArgument, "methods contain duplicates");
  }
  if (top_k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be at least 1");
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(q * static_cast<double>(values.size()));
  const auto idx = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(values.size()))) - 1;
  return values[idx];
}

EvalResult evaluate(const CorpusSplit& corpus, const EvalConfig& cfg, const SummarizerDeps& deps) {
  cfg.validate();
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "evaluation corpus is empty");
  if (deps.hybrid == nullptr && std::find(cfg.methods.begin(), cfg.methods.end(), Method::kHybrid) != cfg.methods.end()) {
    throw Error(ErrorCode::kMissingModel, "hybrid evaluation requires a trained model");
  }

  const auto subset = take_first(corpus, cfg.n_articles);
  EvalResult result;
  result.config = cfg;
  result.n_articles = subset.size();
  result.articles.resize(subset.size());

  // Each slot is written by exactly one worker; reduction happens afterwards
  // in index order.
  const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, std::max<std::size_t>(subset.size(), 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < subset.size(); ++i) result.articles[i] = evaluate_article(subset.records[i], i, cfg, deps);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < subset.size(); i = next++) {
          try {
            result.articles[i] = evaluate_article(subset.records[i], i, cfg, deps);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  for (const auto method : cfg.methods) {
    MethodResult mr;
    std::vector<double> timings;
    double r1 = 0.0, r2 = 0.0, rl = 0.0;
    for (const auto& a : result.articles) {
      auto it = a.reports.find(method);
      if (it == a.reports.end()) {
        ++mr.n_skipped;
        continue;
      }
      ++mr.n_evaluated;
      r1 += it->second.rouge1.f1;
      r2 += it->second.rouge2.f1;
      rl += it->second.rougeL.f1;
      timings.push_back(a.elapsed_ms.at(method));
    }
    if (mr.n_evaluated > 0) {
      const auto n = static_cast<double>(mr.n_evaluated);
      mr.rouge1_f1 = r1 / n;
      mr.rouge2_f1 = r2 / n;
      mr.rougeL_f1 = rl / n;
      double total_ms = 0.0;
      for (const auto t : timings) total_ms += t;
      mr.timing = {total_ms / n, percentile(timings, 0.5), percentile(timings, 0.95)};
    }
    result.per_method[method] = mr;
  }
  return result;
}

json result_to_json(const EvalResult& result) {
  json methods = json::array();
  for (const auto m : result.config.methods) methods.push_back(method_name(m));

  json per_method = json::object();
  for (const auto& [m, r] : result.per_method) {
    per_method[std::string(method_name(m))] = {
        {"rouge1_f1", r.rouge1_f1},
        {"rouge2_f1", r.rouge2_f1},
        {"rougeL_f1", r.rougeL_f1},
        {"timing", {{"mean_ms", r.timing.mean_ms}, {"median_ms", r.timing.median_ms}, {"p95_ms", r.timing.p95_ms}}},
        {"n_evaluated", r.n_evaluated},
        {"n_skipped", r.n_skipped},
    };
  }

  json articles = json::array();
  for (const auto& a : result.articles) {
    json reports = json::object();
    json elapsed = json::object();
    for (const auto& [m, rep] : a.reports) {
      reports[std::string(method_name(m))] = {{"rouge1", score_to_json(rep.rouge1)},
                                              {"rouge2", score_to_json(rep.rouge2)},
                                              {"rougeL", score_to_json(rep.rougeL)}};
    }
    for (const auto& [m, ms] : a.elapsed_ms) elapsed[std::string(method_name(m))] = ms;
    articles.push_back({{"index", a.index}, {"scores", std::move(reports)}, {"elapsed_ms", std::move(elapsed)}});
  }

  return {
      {"schema_version", kReportSchemaVersion},
      {"config",
       {{"n_articles", result.config.n_articles},
        {"methods", std::move(methods)},
        {"top_k", result.config.top_k},
        {"seed", result.config.seed}}},
      {"n_articles", result.n_articles},
      {"per_method", std::move(per_method)},
      {"articles", std::move(articles)},
  };
}

EvalResult result_from_json(const json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw Error(ErrorCode::kParseError, "unsupported report schema version");
    }
    EvalResult result;
    const auto& cfg = doc.at("config");
    result.config.n_articles = cfg.at("n_articles").get<std::size_t>();
    result.config.methods.clear();
    for (const auto& m : cfg.at("methods")) result.config.methods.push_back(method_from_json(m));
    result.config.top_k = cfg.at("top_k").get<std::size_t>();
    result.config.seed = cfg.at("seed").get<std::uint64_t>();
    result.n_articles = doc.at("n_articles").get<std::size_t>();

    for (const auto& [name, r] : doc.at("per_method").items()) {
      MethodResult mr;
      mr.rouge1_f1 = r.at("rouge1_f1").get<double>();
      mr.rouge2_f1 = r.at("rouge2_f1").get<double>();
      mr.rougeL_f1 = r.at("rougeL_f1").get<double>();
      const auto& t = r.at("timing");
      mr.timing = {t.at("mean_ms").get<double>(), t.at("median_ms").get<double>(), t.at("p95_ms").get<double>()};
      mr.n_evaluated = r.at("n_evaluated").get<std::size_t>();
      mr.n_skipped = r.at("n_skipped").get<std::size_t>();
      result.per_method[method_from_json(name)] = mr;
    }

    for (const auto& a : doc.at("articles")) {
      ArticleScores scores;
      scores.index = a.at("index").get<std::size_t>();
      for (const auto& [name, rep] : a.at("scores").items()) {
        scores.reports[method_from_json(name)] = {score_from_json(rep.at("rouge1")), score_from_json(rep.at("rouge2")),
                                                  score_from_json(rep.at("rougeL"))};
      }
      for (const auto& [name, ms] : a.at("elapsed_ms").items()) scores.elapsed_ms[method_from_json(name)] = ms.get<double>();
      result.articles.push_back(std::move(scores));
    }
    return result;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed evaluation report: ") + e.what());
  }
}

std::string result_to_markdown(const EvalResult& result) {
  std::ostringstream out;
  out << "| Model | ROUGE-1 | ROUGE-2 | ROUGE-L | mean ms | median ms | p95 ms | evaluated | skipped |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto m : result.config.methods) {
    auto it = result.per_method.find(m);
    if (it == result.per_method.end()) continue;
    const auto& r = it->second;
    out << "| " << method_name(m) << " | " << fixed(r.rouge1_f1, 4) << " | " << fixed(r.rouge2_f1, 4) << " | "
        << fixed(r.rougeL_f1, 4) << " | " << fixed(r.timing.mean_ms, 3) << " | " << fixed(r.timing.median_ms, 3)
        << " | " << fixed(r.timing.p95_ms, 3) << " | " << r.n_evaluated << " | " << r.n_skipped << " |\n";
  }
  return out.str();
}

void emit_report(const EvalResult& result, const std::filesystem::path& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  if (format == ReportFormat::kJson) {
    out << result_to_json(result).dump(2) << "\n";
  } else {
    out << result_to_markdown(result);
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace newssum
