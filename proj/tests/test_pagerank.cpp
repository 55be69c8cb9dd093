#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "newssum/ranker.hpp"
#include "oracles.hpp"

using namespace newssum;

namespace {

SentenceGraph graph_of(std::vector<double> w, std::size_t n) {
  SentenceGraph g;
  g.n = n;
  g.weights = std::move(w);
  return g;
}

SentenceSet make_set(std::vector<std::string> s) {
  SentenceSet set;
  for (std::size_t i = 0; i < s.size(); ++i) set.positions.push_back(i);
  set.sentences = std::move(s);
  return set;
}

double sum_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("complete graph with equal weights is uniform") {
  for (std::size_t n : {2u, 3u, 7u}) {
    std::vector<double> w(n * n, 0.4);
    for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 0.0;
    const auto p = pagerank(graph_of(w, n));
    for (double x : p) CHECK(x == doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-9));
  }
}

TEST_CASE("three node path fixed point") {
  const auto p = pagerank(graph_of({0, 1, 0, 1, 0, 1, 0, 1, 0}, 3));
  CHECK(p[0] == doctest::Approx(0.2568).epsilon(1e-3));
  CHECK(p[1] == doctest::Approx(0.4865).epsilon(1e-3));
  CHECK(p[2] == doctest::Approx(0.2568).epsilon(1e-3));
  // Hand solution: x = 0.05 + 0.425 y, y = 0.05 + 1.7 x.
  const double x = 0.07125 / 0.2775;
  CHECK(std::fabs(p[0] - x) < 1e-6);
}

TEST_CASE("single node and empty graph") {
  CHECK(pagerank(graph_of({0.0}, 1)) == std::vector<double>{1.0});
  const auto p = pagerank(graph_of(std::vector<double>(16, 0.0), 4));
  for (double x : p) CHECK(x == doctest::Approx(0.25));
}

TEST_CASE("pagerank agrees with the dense linear solve on random graphs") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = size(rng);
    const auto w = oracle::random_symmetric_graph(n, rng);
    const auto p = pagerank(graph_of(w, n));
    const auto expect = oracle::pagerank_linear_solve(w, n, 0.85);
    CHECK(std::fabs(sum_of(p) - 1.0) <= 1e-9);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(p[i] - expect[i]) <= 1e-6);
      CHECK(p[i] >= 0.15 / static_cast<double>(n) - 1e-12);
    }
    // Uniform edge scaling leaves the ranking unchanged.
    auto scaled = w;
    for (auto& x : scaled) x *= 3.25;
    CHECK(rank_descending(pagerank(graph_of(scaled, n))) == rank_descending(p));
  }
}

TEST_CASE("invalid parameters and graphs are rejected") {
  PageRankParams bad;
  bad.damping = 1.0;
  CHECK_THROWS(bad.validate());
  bad = {};
  bad.tol = 0.0;
  CHECK_THROWS(bad.validate());
  CHECK_THROWS(graph_of({0, 1, 2, 0}, 2).validate());
  CHECK_THROWS(graph_of({1, 0, 0, 0}, 2).validate());
  CHECK_THROWS(graph_of({0, -1, -1, 0}, 2).validate());
}

TEST_CASE("rank_descending is a stable argsort") {
  CHECK(rank_descending(std::vector<double>{0.1, 0.5, 0.5, 0.2}) == std::vector<std::size_t>{1, 2, 3, 0});
  CHECK(rank_descending(std::vector<double>{0, 0, 0}) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("baseline scores are TF-IDF sums") {
  const auto r = score_baseline(fit_tfidf(make_set({"the cat sat.", "the dog ran.", "the cat ran."})));
  CHECK(r.method == Method::kBaseline);
  const double s1 = (1.0 / 3.0) * std::log(1.5) + (1.0 / 3.0) * std::log(3.0);
  CHECK(r.scores[0] == doctest::Approx(s1).epsilon(1e-12));
  CHECK(s1 == doctest::Approx(0.5014).epsilon(1e-4));
  const auto same = score_baseline(fit_tfidf(make_set({"a b c.", "a b c.", "a b c."})));
  CHECK(same.scores == std::vector<double>{0, 0, 0});
  CHECK(same.ranking == std::vector<std::size_t>{0, 1, 2});
  const auto single = score_baseline(fit_tfidf(make_set({"one sentence only."})));
  CHECK(single.scores == std::vector<double>{0.0});
  CHECK(single.ranking == std::vector<std::size_t>{0});
}

TEST_CASE("graph scoring") {
  const auto twin = score_graph(make_set({"same words here.", "same words here."}));
  CHECK(twin.method == Method::kGraph);
  CHECK(twin.scores[0] == doctest::Approx(0.5));
  CHECK(twin.scores[1] == doctest::Approx(0.5));

  // Sentence 0 shares a term with every other sentence; sentence 3 shares
  // nothing with anyone.
  const auto sents = make_set({"alpha beta gamma delta.", "alpha one two.", "beta three four.", "zeta eta theta."});
  const auto r = score_graph(sents);
  const auto m = similarity_matrix(fit_tfidf(sents));
  const auto dense = oracle::pagerank_linear_solve(m.values, m.n, 0.85);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::fabs(r.scores[i] - dense[i]) < 1e-6);
  CHECK(r.scores[0] > r.scores[3]);
  CHECK(r.ranking.front() == 0);
}
