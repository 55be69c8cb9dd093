#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "newssum/error.hpp"
#include "newssum/summarizer.hpp"

namespace newssum {

struct NewsItem {
  std::string title;
  std::string source_name;
  std::string url;
  std::string content;
  std::string published_at;  // RFC 3339, as delivered
};

struct FeedQuery {
  std::optional<std::string> query;
  std::size_t page_size = 20;  // 1..100
  std::string api_key;

  // Throws Error{kInvalidArgument}.
  void validate() const;
};

struct FetchOptions {
  std::chrono::milliseconds timeout{10000};
  std::size_t retries = 2;
  std::chrono::milliseconds backoff{250};  // doubled after every retry
};

struct FeedResult {
  std::vector<NewsItem> items;
  std::size_t dropped = 0;  // items without a url or usable content
};

// Upstream rate limit. retry_after is the Retry-After header in seconds when
// the server sent one.
class RateLimitedError : public Error {
 public:
  RateLimitedError(const std::string& message, std::optional<std::chrono::seconds> retry_after)
      : Error(ErrorCode::kRateLimited, message), retry_after_(retry_after) {}

  std::optional<std::chrono::seconds> retry_after() const noexcept { return retry_after_; }

 private:
  std::optional<std::chrono::seconds> retry_after_;
};

// Parses a NewsAPI-style body {status, articles:[{title, source:{name}, url,
// content, publishedAt}]}. Throws Error{kBadPayload}.
FeedResult parse_headlines(std::string_view body);

// GET {endpoint}/v2/top-headlines?q=&pageSize=&apiKey=. Transport failures
// and 5xx responses are retried with exponential backoff; 401 throws
// Error{kAuthError}, 429 throws RateLimitedError, other failures throw
// Error{kTransport} or Error{kBadPayload}.
FeedResult fetch_headlines(const FeedQuery& query, std::string_view endpoint, const FetchOptions& options = {});

inline constexpr std::size_t kShortContentSentences = 3;

struct FeedSummary {
  NewsItem item;
  std::optional<Summary> summary;  // empty when nothing survived cleaning
  bool short_content = false;      // fewer than kShortContentSentences sentences
};

// Summarises every item in input order. Throws Error{kMissingModel} for
// hybrid without a model; per-item EmptyInput yields an empty summary.
std::vector<FeedSummary> summarize_feed(const std::vector<NewsItem>& items, Method method, std::size_t top_k,
                                        const SummarizerDeps& deps);

// [{title, source, url, published_at, summary, sentences, method, elapsed_ms, short_content}]
nlohmann::json feed_to_json(const std::vector<FeedSummary>& feed);

}  // namespace newssum
