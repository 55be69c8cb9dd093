// newssum command line: summarize, evaluate, train-hybrid, rouge,
// fetch-news, serve.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "newssum/corpus.hpp"
#include "newssum/error.hpp"
#include "newssum/evalharness.hpp"
#include "newssum/kernels.hpp"
#include "newssum/newsfeed.hpp"
#include "newssum/ranker.hpp"
#include "newssum/rouge.hpp"
#include "newssum/service.hpp"
#include "newssum/summarizer.hpp"

namespace {

using namespace newssum;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Method method_or_usage(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw UsageError("unknown method '" + name + "' (expected baseline, graph or hybrid)");
  return *m;
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(method_or_usage(item));
  }
  return out;
}

struct TextOptions {
  std::string contractions;
  std::string abbreviations;
  std::size_t min_words = kDefaultMinSentenceWords;

  void attach(CLI::App* app) {
    app->add_option("--contractions", contractions, "Contraction table (TSV); default is built in");
    app->add_option("--abbreviations", abbreviations, "Abbreviation list; default is built in");
    app->add_option("--min-words", min_words, "Minimum words per sentence")->check(CLI::PositiveNumber);
  }

  TextPipeline pipeline() const {
    TextPipeline p;
    if (!contractions.empty()) p.contractions = ContractionTable::load(contractions);
    if (!abbreviations.empty()) p.abbreviations = AbbreviationSet::load(abbreviations);
    p.min_words = min_words;
    return p;
  }
};

struct ModelHolder {
  std::optional<HybridModel> model;

  void load_if(const std::string& path) {
    if (!path.empty()) model = load_model(path);
  }
  const HybridModel* get() const { return model ? &*model : nullptr; }
};

CorpusSplit load_split(const std::string& path, SplitName name) {
  auto loaded = load_corpus(path, format_from_path(path), name);
  if (loaded.skipped > 0) std::cerr << "skipped " << loaded.skipped << " invalid rows in " << path << "\n";
  return std::move(loaded.split);
}

std::pair<std::string, int> parse_bind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw UsageError("--bind must be host:port");
  try {
    return {bind.substr(0, colon), std::stoi(bind.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("--bind port is not a number");
  }
}

SummaryService* g_service = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extractive news summarisation toolkit"};
  app.require_subcommand(1);

  TextOptions text_opts;

  // summarize
  auto* cmd_sum = app.add_subcommand("summarize", "Summarise one article (stdin or --file)");
  std::string sum_file, sum_method = "graph", sum_model;
  std::size_t sum_top_k = kDefaultTopK;
  bool sum_json = false;
  cmd_sum->add_option("--file", sum_file, "Article text file; stdin when omitted");
  cmd_sum->add_option("--method", sum_method, "baseline | graph | hybrid");
  cmd_sum->add_option("--top-k", sum_top_k, "Sentences in the summary")->check(CLI::PositiveNumber);
  cmd_sum->add_option("--model", sum_model, "Hybrid model file");
  cmd_sum->add_flag("--json", sum_json, "Print the JSON response shape instead of text");
  text_opts.attach(cmd_sum);

  // evaluate
  auto* cmd_eval = app.add_subcommand("evaluate", "Average ROUGE over the first N articles of a corpus");
  std::string eval_corpus, eval_methods = "baseline,graph", eval_report, eval_format = "json", eval_model;
  std::size_t eval_n = 100, eval_top_k = kDefaultTopK, eval_threads = 1;
  std::uint64_t eval_seed = 0;
  cmd_eval->add_option("--corpus", eval_corpus, "CSV or JSONL corpus")->required();
  cmd_eval->add_option("--n", eval_n, "Articles to evaluate")->check(CLI::PositiveNumber);
  cmd_eval->add_option("--methods", eval_methods, "Comma separated methods");
  cmd_eval->add_option("--top-k", eval_top_k, "Sentences per summary")->check(CLI::PositiveNumber);
  cmd_eval->add_option("--report", eval_report, "Write the report to this file");
  cmd_eval->add_option("--format", eval_format, "json | markdown")->check(CLI::IsMember({"json", "markdown"}));
  cmd_eval->add_option("--model", eval_model, "Hybrid model file");
  cmd_eval->add_option("--seed", eval_seed, "Recorded in the report");
  cmd_eval->add_option("--threads", eval_threads, "Worker threads")->check(CLI::PositiveNumber);
  text_opts.attach(cmd_eval);

  // train-hybrid
  auto* cmd_train = app.add_subcommand("train-hybrid", "Train the PageRank-supervised regression forest");
  std::string train_corpus, train_out;
  std::size_t train_vocab = kDefaultVocabSize, train_limit = 0;
  ForestConfig forest_cfg;
  std::uint64_t train_seed = 0;
  cmd_train->add_option("--corpus", train_corpus, "Training corpus (CSV or JSONL)")->required();
  cmd_train->add_option("--vocab-size", train_vocab, "Feature vocabulary size")->check(CLI::PositiveNumber);
  cmd_train->add_option("--trees", forest_cfg.trees, "Number of trees")->check(CLI::PositiveNumber);
  cmd_train->add_option("--depth", forest_cfg.max_depth, "Maximum tree depth");
  cmd_train->add_option("--min-leaf", forest_cfg.min_samples_leaf, "Minimum samples per leaf")->check(CLI::PositiveNumber);
  cmd_train->add_option("--max-features", forest_cfg.max_features, "Features tried per split (0 = sqrt(V))");
  cmd_train->add_option("--threads", forest_cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd_train->add_option("--limit", train_limit, "Use only the first N training articles (0 = all)");
  cmd_train->add_option("--seed", train_seed, "RNG seed");
  cmd_train->add_option("--out", train_out, "Model output file")->required();
  text_opts.attach(cmd_train);

  // rouge
  auto* cmd_rouge = app.add_subcommand("rouge", "Score a candidate summary against a reference");
  std::string rouge_cand, rouge_ref;
  cmd_rouge->add_option("--candidate", rouge_cand, "Candidate summary file")->required();
  cmd_rouge->add_option("--reference", rouge_ref, "Reference summary file")->required();

  // fetch-news
  auto* cmd_fetch = app.add_subcommand("fetch-news", "Fetch live headlines and summarise them");
  std::string fetch_q, fetch_method = "graph", fetch_key, fetch_endpoint = "https://newsapi.org", fetch_model;
  std::size_t fetch_top_k = kDefaultTopK, fetch_page_size = 20;
  cmd_fetch->add_option("--q", fetch_q, "Keyword filter");
  cmd_fetch->add_option("--method", fetch_method, "baseline | graph | hybrid");
  cmd_fetch->add_option("--top-k", fetch_top_k, "Sentences per summary")->check(CLI::PositiveNumber);
  cmd_fetch->add_option("--page-size", fetch_page_size, "Headlines to fetch (1-100)")->check(CLI::Range(1, 100));
  cmd_fetch->add_option("--api-key", fetch_key, "News API key")->envname("NEWS_API_KEY");
  cmd_fetch->add_option("--news-endpoint", fetch_endpoint, "News API base URL")->envname("NEWSSUM_NEWS_ENDPOINT");
  cmd_fetch->add_option("--model", fetch_model, "Hybrid model file");
  text_opts.attach(cmd_fetch);

  // serve
  auto* cmd_serve = app.add_subcommand("serve", "Run the JSON HTTP service");
  std::string serve_bind = "127.0.0.1:8080", serve_method = "graph", serve_model, serve_endpoint, serve_key;
  std::size_t serve_top_k = kDefaultTopK;
  cmd_serve->add_option("--bind", serve_bind, "host:port")->envname("NEWSSUM_BIND");
  cmd_serve->add_option("--model", serve_model, "Hybrid model file")->envname("NEWSSUM_MODEL");
  cmd_serve->add_option("--method", serve_method, "Default method")->envname("NEWSSUM_METHOD");
  cmd_serve->add_option("--top-k", serve_top_k, "Default top_k")->envname("NEWSSUM_TOP_K")->check(CLI::PositiveNumber);
  cmd_serve->add_option("--news-endpoint", serve_endpoint, "News API base URL for /live")->envname("NEWSSUM_NEWS_ENDPOINT");
  cmd_serve->add_option("--api-key", serve_key, "News API key")->envname("NEWS_API_KEY");
  text_opts.attach(cmd_serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_sum->parsed()) {
      SummarizerDeps deps;
      deps.pipeline = text_opts.pipeline();
      ModelHolder model;
      model.load_if(sum_model);
      deps.hybrid = model.get();
      const std::string text = sum_file.empty()
                                   ? std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>())
                                   : read_file(sum_file);
      const auto summary = summarize({text, method_or_usage(sum_method), sum_top_k}, deps);
      if (sum_json) {
        std::cout << summary_to_json(summary).dump(2) << "\n";
      } else {
        std::cout << summary.text << "\n" << "elapsed_ms: " << summary.elapsed_ms << "\n";
      }
      return 0;
    }

    if (cmd_eval->parsed()) {
      EvalConfig cfg;
      cfg.n_articles = eval_n;
      cfg.methods = parse_methods(eval_methods);
      cfg.top_k = eval_top_k;
      cfg.seed = eval_seed;
      cfg.threads = eval_threads;
      try {
        cfg.validate();
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      SummarizerDeps deps;
      deps.pipeline = text_opts.pipeline();
      ModelHolder model;
      model.load_if(eval_model);
      deps.hybrid = model.get();
      const auto corpus = load_split(eval_corpus, SplitName::kValidation);
      const auto result = evaluate(corpus, cfg, deps);
      const auto format = eval_format == "json" ? ReportFormat::kJson : ReportFormat::kMarkdown;
      if (!eval_report.empty()) emit_report(result, eval_report, format);
      std::cout << result_to_markdown(result);
      return 0;
    }

    if (cmd_train->parsed()) {
      const auto pipeline = text_opts.pipeline();
      auto corpus = load_split(train_corpus, SplitName::kTrain);
      if (train_limit > 0) corpus = take_first(corpus, train_limit);
      HybridModel model;
      model.space = build_feature_space(corpus, train_vocab, pipeline);
      model.forest = train_forest(corpus, model.space, forest_cfg, train_seed, pipeline);
      save_model(model, train_out);
      std::cerr << "trained " << model.forest.trees.size() << " trees over " << model.space.dimension()
                << " features from " << corpus.size() << " articles -> " << train_out << "\n";
      return 0;
    }

    if (cmd_rouge->parsed()) {
      const auto report = score_pair(read_file(rouge_cand), read_file(rouge_ref));
      std::cout << rouge_to_json(report).dump(2) << "\n";
      return 0;
    }

    if (cmd_fetch->parsed()) {
      if (fetch_key.empty()) throw UsageError("no API key: pass --api-key or set NEWS_API_KEY");
      SummarizerDeps deps;
      deps.pipeline = text_opts.pipeline();
      ModelHolder model;
      model.load_if(fetch_model);
      deps.hybrid = model.get();
      FeedQuery q;
      if (!fetch_q.empty()) q.query = fetch_q;
      q.page_size = fetch_page_size;
      q.api_key = fetch_key;
      const auto feed = fetch_headlines(q, fetch_endpoint);
      if (feed.dropped > 0) std::cerr << "dropped " << feed.dropped << " items without content\n";
      std::cout << feed_to_json(summarize_feed(feed.items, method_or_usage(fetch_method), fetch_top_k, deps)).dump(2)
                << "\n";
      return 0;
    }

    if (cmd_serve->parsed()) {
      ServiceConfig cfg;
      std::tie(cfg.host, cfg.port) = parse_bind(serve_bind);
      cfg.default_method = method_or_usage(serve_method);
      cfg.default_top_k = serve_top_k;
      if (!serve_model.empty()) cfg.model_path = serve_model;
      if (!serve_endpoint.empty()) cfg.news_endpoint = serve_endpoint;
      cfg.news_api_key = serve_key;
      try {
        cfg.validate();
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      SummarizerDeps deps;
      deps.pipeline = text_opts.pipeline();
      SummaryService service(cfg, deps);

      // Block SIGINT/SIGTERM in every thread and wait for them on one.
      sigset_t signals;
      sigemptyset(&signals);
      sigaddset(&signals, SIGINT);
      sigaddset(&signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);
      g_service = &service;
      std::jthread waiter([&signals] {
        int sig = 0;
        sigwait(&signals, &sig);
        if (g_service != nullptr) g_service->stop();
      });

      const int port = service.bind();
      std::cerr << "listening on " << cfg.host << ":" << port << " (kernels: "
                << kernels::isa_name(kernels::active().isa) << ")\n";
      service.listen_after_bind();
      g_service = nullptr;
      // The waiter may still be blocked in sigwait when the server stopped for
      // another reason; wake it.
      if (waiter.joinable()) pthread_kill(waiter.native_handle(), SIGTERM);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
