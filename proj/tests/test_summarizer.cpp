#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "newssum/corpus.hpp"
#include "newssum/error.hpp"
#include "newssum/summarizer.hpp"
#include "oracles.hpp"

using namespace newssum;

namespace {

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(NEWSSUM_TEST_DATA) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<ArticleRecord> fixtures() {
  return load_corpus(std::string(NEWSSUM_TEST_DATA) + "/fixture_articles.jsonl", CorpusFormat::kJsonl).split.records;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kIoError;
}

// Summed TF-IDF per sentence, computed with plain maps.
std::vector<double> baseline_oracle(const std::vector<std::string>& sentences) {
  std::vector<std::vector<std::string>> toks;
  for (const auto& s : sentences) {
    std::vector<std::string> words;
    for (auto w : oracle::split_ws(s)) {
      while (!w.empty() && std::string(".,!?").find(w.front()) != std::string::npos) w.erase(0, 1);
      while (!w.empty() && std::string(".,!?").find(w.back()) != std::string::npos) w.pop_back();
      if (!w.empty()) words.push_back(w);
    }
    toks.push_back(words);
  }
  std::map<std::string, double> df;
  for (const auto& t : toks) {
    for (const auto& w : std::set<std::string>(t.begin(), t.end())) df[w] += 1.0;
  }
  const double n = static_cast<double>(sentences.size());
  std::vector<double> out;
  for (const auto& t : toks) {
    std::map<std::string, double> tf;
    for (const auto& w : t) tf[w] += 1.0;
    double s = 0.0;
    for (const auto& [w, c] : tf) s += c / static_cast<double>(t.size()) * std::log(n / df[w]);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("lion article graph summary picks the expected sentences") {
  const SummarizerDeps deps;
  const auto s = summarize({read_file("lion_article.txt"), Method::kGraph, 3}, deps);
  REQUIRE(s.chosen.size() == 3);
  int hits = 0;
  for (const auto& c : s.chosen) {
    if (c.text.starts_with("next level drunk") || c.text.starts_with("brave fool") ||
        c.text.starts_with("mr kumar explained afterward"))
      ++hits;
  }
  CHECK(hits >= 2);
}

TEST_CASE("top_k larger than the article returns every sentence") {
  const SummarizerDeps deps;
  const std::string text = "The first sentence is here. A second one follows now. Then the third closes it.";
  const auto s = summarize({text, Method::kGraph, 10}, deps);
  CHECK(s.chosen.size() == 3);
  CHECK(s.sentence_count == 3);
}

TEST_CASE("baseline top_k=1 picks the highest summed tf-idf") {
  const SummarizerDeps deps;
  for (const auto& rec : fixtures()) {
    const auto sents = deps.pipeline.sentences(rec.article);
    const auto expected = baseline_oracle(sents.sentences);
    std::size_t best = 0;
    for (std::size_t i = 1; i < expected.size(); ++i) {
      if (expected[i] > expected[best] + 1e-12) best = i;
    }
    const auto s = summarize({rec.article, Method::kBaseline, 1}, deps);
    REQUIRE(s.chosen.size() == 1);
    CHECK(std::fabs(expected[s.chosen[0].index] - expected[best]) <= 1e-12);
    CHECK(s.chosen[0].score == doctest::Approx(expected[s.chosen[0].index]).epsilon(1e-9));
  }
}

TEST_CASE("summaries are extractive, nested in k and ordered by score") {
  const SummarizerDeps deps;
  for (const auto& rec : fixtures()) {
    const auto sents = deps.pipeline.sentences(rec.article);
    for (auto m : {Method::kBaseline, Method::kGraph}) {
      const auto s2 = summarize({rec.article, m, 2}, deps);
      const auto s4 = summarize({rec.article, m, 4}, deps);
      std::string joined;
      for (std::size_t i = 0; i < s4.chosen.size(); ++i) {
        const auto& c = s4.chosen[i];
        CHECK(c.text == sents.sentences[c.index]);
        if (i > 0) CHECK(s4.chosen[i - 1].score >= c.score);
        if (i < s2.chosen.size()) CHECK(s2.chosen[i].index == c.index);
        joined += (i ? " " : "") + c.text;
      }
      CHECK(s4.text == joined);
    }
  }
}

TEST_CASE("identical sentences tie and keep document order") {
  const SummarizerDeps deps;
  const std::string text = "The sky is blue today. The sky is blue today. The sky is blue today.";
  const auto s = summarize({text, Method::kGraph, 2}, deps);
  REQUIRE(s.chosen.size() == 2);
  CHECK(s.chosen[0].index == 0);
  CHECK(s.chosen[1].index == 1);
}

TEST_CASE("error paths") {
  SummarizerDeps deps;
  CHECK(code_of([&] { summarize({"", Method::kGraph, 3}, deps); }) == ErrorCode::kEmptyInput);
  CHECK(code_of([&] { summarize({"<p> ### </p>", Method::kGraph, 3}, deps); }) == ErrorCode::kEmptyInput);
  CHECK(code_of([&] { summarize({"Some text here now.", Method::kHybrid, 3}, deps); }) ==
        ErrorCode::kMissingModel);
  CHECK(code_of([&] { summarize({"Some text here now.", Method::kGraph, 0}, deps); }) ==
        ErrorCode::kInvalidArgument);
  deps.max_sentences = 2;
  CHECK(code_of([&] {
          summarize({"One two three four. Five six seven eight. Nine ten eleven twelve.", Method::kGraph, 1}, deps);
        }) == ErrorCode::kTooManySentences);
}

TEST_CASE("json shape") {
  const SummarizerDeps deps;
  const auto s = summarize({read_file("lion_article.txt"), Method::kBaseline, 2}, deps);
  const auto j = summary_to_json(s);
  CHECK(j["summary"].get<std::string>() == s.text);
  CHECK(j["method"].get<std::string>() == "baseline");
  CHECK(j["sentences"].size() == 2);
  CHECK(j["sentences"][0]["index"].get<std::size_t>() == s.chosen[0].index);
  CHECK(j.contains("elapsed_ms"));
}
