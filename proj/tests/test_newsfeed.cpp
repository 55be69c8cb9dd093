#include <atomic>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "newssum/error.hpp"
#include "newssum/newsfeed.hpp"
#include "stub_server.hpp"

using namespace newssum;
using nlohmann::json;

namespace {

std::string feed_fixture() {
  std::ifstream in(std::string(NEWSSUM_TEST_DATA) + "/feed_fixture.json");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json article(const std::string& title, const json& content, const std::string& url = "https://example.com/a") {
  return {{"title", title},     {"source", {{"name", "Wire"}}}, {"url", url},
          {"content", content}, {"publishedAt", "2024-05-01T10:00:00Z"}};
}

FetchOptions fast() {
  FetchOptions o;
  o.timeout = std::chrono::milliseconds(2000);
  o.backoff = std::chrono::milliseconds(1);
  return o;
}

FeedQuery query() {
  FeedQuery q;
  q.api_key = "test-key";
  q.page_size = 5;
  return q;
}

ErrorCode fetch_code(const std::string& endpoint) {
  try {
    fetch_headlines(query(), endpoint, fast());
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kIoError;
}

}  // namespace

TEST_CASE("parse_headlines") {
  SUBCASE("fixture") {
    const auto r = parse_headlines(feed_fixture());
    CHECK(r.items.size() + r.dropped == 10);
    CHECK(r.items.size() >= 8);
    for (const auto& it : r.items) {
      CHECK_FALSE(it.url.empty());
      CHECK_FALSE(it.content.empty());
    }
  }
  SUBCASE("null content is dropped") {
    const json body{{"status", "ok"}, {"articles", {article("a", "Some body text here."), article("b", nullptr)}}};
    const auto r = parse_headlines(body.dump());
    CHECK(r.items.size() == 1);
    CHECK(r.dropped == 1);
    CHECK(r.items[0].source_name == "Wire");
    CHECK(r.items[0].published_at == "2024-05-01T10:00:00Z");
  }
  SUBCASE("bad payloads") {
    for (const char* body : {"not json", "[]", R"({"status":"error","message":"nope"})", R"({"status":"ok"})"}) {
      CAPTURE(body);
      try {
        parse_headlines(body);
        FAIL("expected BadPayload");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kBadPayload);
      }
    }
  }
}

TEST_CASE("query validation") {
  auto q = query();
  CHECK_NOTHROW(q.validate());
  q.page_size = 0;
  CHECK_THROWS_AS(q.validate(), Error);
  q.page_size = 101;
  CHECK_THROWS_AS(q.validate(), Error);
  q = query();
  q.api_key.clear();
  CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("fetch_headlines against a stub server") {
  StubServer stub;
  std::atomic<int> flaky_calls{0};
  std::string seen_query;
  auto& s = stub.server();
  s.Get("/ok/v2/top-headlines", [&](const httplib::Request& req, httplib::Response& res) {
    seen_query = req.get_param_value("apiKey") + "|" + req.get_param_value("pageSize") + "|" + req.get_param_value("q");
    const json body{{"status", "ok"},
                    {"articles", {article("one", "First story body."), article("two", "Second story body.", "u2")}}};
    res.set_content(body.dump(), "application/json");
  });
  s.Get("/auth/v2/top-headlines", [](const httplib::Request&, httplib::Response& res) { res.status = 401; });
  s.Get("/limit/v2/top-headlines", [](const httplib::Request&, httplib::Response& res) {
    res.status = 429;
    res.set_header("Retry-After", "30");
  });
  s.Get("/down/v2/top-headlines", [&](const httplib::Request&, httplib::Response& res) {
    ++flaky_calls;
    res.status = 500;
  });
  s.Get("/recover/v2/top-headlines", [&](const httplib::Request&, httplib::Response& res) {
    if (++flaky_calls < 2) {
      res.status = 503;
      return;
    }
    res.set_content(json{{"status", "ok"}, {"articles", {article("x", "Recovered body.")}}}.dump(), "application/json");
  });
  s.Get("/garbage/v2/top-headlines", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("<html>", "text/html");
  });
  stub.start();

  SUBCASE("success") {
    auto q = query();
    q.query = "climate";
    const auto r = fetch_headlines(q, stub.endpoint() + "/ok", fast());
    CHECK(r.items.size() == 2);
    CHECK(r.items[1].url == "u2");
    CHECK(seen_query == "test-key|5|climate");
  }
  SUBCASE("401") { CHECK(fetch_code(stub.endpoint() + "/auth") == ErrorCode::kAuthError); }
  SUBCASE("429 carries retry-after") {
    try {
      fetch_headlines(query(), stub.endpoint() + "/limit", fast());
      FAIL("expected RateLimited");
    } catch (const RateLimitedError& e) {
      CHECK(e.code() == ErrorCode::kRateLimited);
      REQUIRE(e.retry_after().has_value());
      CHECK(e.retry_after()->count() == 30);
    }
  }
  SUBCASE("5xx is retried then reported") {
    CHECK(fetch_code(stub.endpoint() + "/down") == ErrorCode::kTransport);
    CHECK(flaky_calls.load() == 3);
  }
  SUBCASE("5xx then success") {
    const auto r = fetch_headlines(query(), stub.endpoint() + "/recover", fast());
    CHECK(r.items.size() == 1);
    CHECK(flaky_calls.load() == 2);
  }
  SUBCASE("malformed body") { CHECK(fetch_code(stub.endpoint() + "/garbage") == ErrorCode::kBadPayload); }
  SUBCASE("connection refused") {
    stub.stop();
    CHECK(fetch_code(stub.endpoint() + "/ok") == ErrorCode::kTransport);
  }
}

TEST_CASE("summarize_feed") {
  const SummarizerDeps deps;
  CHECK(summarize_feed({}, Method::kGraph, 3, deps).empty());

  NewsItem one{"t", "s", "u", "Only one sentence lives in this item.", "2024"};
  NewsItem junk{"t", "s", "u2", "<p>$$$</p>", "2024"};
  const auto r = summarize_feed({one, junk}, Method::kGraph, 3, deps);
  REQUIRE(r.size() == 2);
  REQUIRE(r[0].summary.has_value());
  CHECK(r[0].short_content);
  CHECK(r[0].summary->chosen.size() == 1);
  CHECK_FALSE(r[1].summary.has_value());

  CHECK_THROWS_AS(summarize_feed({one}, Method::kHybrid, 3, deps), Error);

  const auto items = parse_headlines(feed_fixture()).items;
  const auto all = summarize_feed(items, Method::kGraph, 2, deps);
  REQUIRE(all.size() == items.size());
  const auto j = feed_to_json(all);
  REQUIRE(j.size() == items.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(j[i]["url"].get<std::string>() == items[i].url);
    CHECK(j[i].contains("short_content"));
    if (all[i].summary) CHECK(all[i].summary->chosen.size() <= 2);
  }
}
