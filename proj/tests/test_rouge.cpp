#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "newssum/rouge.hpp"
#include "oracles.hpp"
#include "rouge_cases.hpp"

using namespace newssum;

namespace {

RougeScore run(const rouge_cases::Case& c) {
  const auto cand = oracle::split_ws(c.candidate);
  const auto ref = oracle::split_ws(c.reference);
  return c.n == 0 ? rouge_l(cand, ref) : rouge_n(cand, ref, c.n);
}

std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t max_len, int alphabet) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> tok(0, alphabet - 1);
  std::vector<std::string> out(len(rng));
  for (auto& t : out) t = std::string(1, static_cast<char>('a' + tok(rng)));
  return out;
}

}  // namespace

TEST_CASE("hand-enumerated cases") {
  for (const auto& c : rouge_cases::all()) {
    CAPTURE(c.candidate);
    CAPTURE(c.reference);
    CAPTURE(c.n);
    const auto s = run(c);
    CHECK(std::fabs(s.precision - c.precision) <= 1e-9);
    CHECK(std::fabs(s.recall - c.recall) <= 1e-9);
    CHECK(std::fabs(s.f1 - rouge_cases::f1(c.precision, c.recall)) <= 1e-9);
  }
}

TEST_CASE("score_pair combines the three metrics") {
  const auto r = score_pair("The cat sat.", "the cat ran");
  CHECK(r.rouge1.f1 == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(r.rouge2.f1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.rougeL.f1 == doctest::Approx(2.0 / 3).epsilon(1e-12));
  const auto j = rouge_to_json(r);
  CHECK(j["rouge2"]["f1"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("from_pr handles the zero case") {
  CHECK(RougeScore::from_pr(0.0, 0.0).f1 == 0.0);
  CHECK(RougeScore::from_pr(0.5, 1.0).f1 == doctest::Approx(2.0 / 3));
}

TEST_CASE("n of zero is rejected") {
  const std::vector<std::string> a{"x"};
  CHECK_THROWS(rouge_n(a, a, 0));
}

TEST_CASE("dp lcs matches brute force") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_tokens(rng, 8, 4);
    const auto b = random_tokens(rng, 8, 4);
    REQUIRE(lcs_length(a, b) == oracle::lcs_brute_force(a, b));
  }
}

TEST_CASE("metric properties on random inputs") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_tokens(rng, 12, 5);
    const auto b = random_tokens(rng, 12, 5);
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto ab = rouge_n(a, b, n);
      const auto ba = rouge_n(b, a, n);
      // Swapping roles swaps precision and recall and keeps F1.
      CHECK(ab.precision == doctest::Approx(ba.recall).epsilon(1e-12));
      CHECK(ab.f1 == doctest::Approx(ba.f1).epsilon(1e-12));
      const auto overlap = static_cast<double>(oracle::clipped_overlap(a, b, n));
      if (a.size() >= n) CHECK(ab.precision == doctest::Approx(overlap / static_cast<double>(a.size() - n + 1)));
      for (double v : {ab.precision, ab.recall, ab.f1}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
      }
    }
    const auto l = rouge_l(a, b);
    CHECK(l.f1 <= 1.0 + 1e-12);
    CHECK(l.f1 <= rouge_n(a, b, 1).f1 + 1e-12);
    CHECK(l.f1 == doctest::Approx(rouge_l(b, a).f1).epsilon(1e-12));
    // Unigram recall depends only on multisets.
    auto shuffled = a;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(rouge_n(shuffled, b, 1).recall == doctest::Approx(rouge_n(a, b, 1).recall).epsilon(1e-12));
    if (!a.empty()) {
      const auto self = rouge_l(a, a);
      CHECK(self.f1 == doctest::Approx(1.0));
    }
  }
}
