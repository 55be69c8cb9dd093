#include "newssum/newsfeed.hpp"

#include <thread>

#include "httplib.h"
#include "newssum/error.hpp"

namespace newssum {
namespace {

using nlohmann::json;

std::string string_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

// Splits "scheme://host[:port][/base]" into the client origin and a path
// prefix.
std::pair<std::string, std::string> split_endpoint(std::string_view endpoint) {
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, "news endpoint must include a scheme: " + std::string(endpoint));
  }
  const auto path_start = endpoint.find('/', scheme_end + 3);
  std::string origin(endpoint.substr(0, path_start));
  std::string base = path_start == std::string_view::npos ? "" : std::string(endpoint.substr(path_start));
  while (!base.empty() && base.back() == '/') base.pop_back();
  return {origin, base};
}

}  // namespace

void FeedQuery::validate() const {
  if (api_key.empty()) throw Error(ErrorCode::kInvalidArgument, "news api key is empty");
  if (page_size < 1 || page_size > 100) throw Error(ErrorCode::kInvalidArgument, "page_size must be in [1, 100]");
}

FeedResult parse_headlines(std::string_view body) {
  const auto doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) throw Error(ErrorCode::kBadPayload, "response is not a JSON object");
  const auto status = string_field(doc, "status");
  if (status != "ok") {
    const auto message = string_field(doc, "message");
    throw Error(ErrorCode::kBadPayload, "status '" + status + "'" + (message.empty() ? "" : ": " + message));
  }
  auto articles = doc.find("articles");
  if (articles == doc.end() || !articles->is_array()) throw Error(ErrorCode::kBadPayload, "missing articles array");

  FeedResult result;
  for (const auto& a : *articles) {
    if (!a.is_object()) {
      ++result.dropped;
      continue;
    }
    NewsItem item;
    item.title = string_field(a, "title");
    item.url = string_field(a, "url");
    item.content = string_field(a, "content");
    item.published_at = string_field(a, "publishedAt");
    if (auto src = a.find("source"); src != a.end() && src->is_object()) item.source_name = string_field(*src, "name");
    if (item.url.empty() || blank(item.content)) {
      ++result.dropped;
      continue;
    }
    result.items.push_back(std::move(item));
  }
  return result;
}

FeedResult fetch_headlines(const FeedQuery& query, std::string_view endpoint, const FetchOptions& options) {
  query.validate();
  const auto [origin, base] = split_endpoint(endpoint);

  httplib::Params params{{"pageSize", std::to_string(query.page_size)}, {"apiKey", query.api_key}};
  if (query.query && !query.query->empty()) params.emplace("q", *query.query);
  const auto path = httplib::append_query_params(base + "/v2/top-headlines", params);

  httplib::Client client(origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  auto backoff = options.backoff;
  std::string last_error;
  for (std::size_t attempt = 0; attempt <= options.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    auto res = client.Get(path);
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401) throw Error(ErrorCode::kAuthError, "news api rejected the key (HTTP 401)");
    if (res->status == 429) {
      std::optional<std::chrono::seconds> retry_after;
      if (res->has_header("Retry-After")) {
        try {
          retry_after = std::chrono::seconds(std::stoll(res->get_header_value("Retry-After")));
        } catch (const std::exception&) {
          // HTTP-date form; left unset.
        }
      }
      throw RateLimitedError("news api rate limit reached (HTTP 429)", retry_after);
    }
    if (res->status >= 500) {
      last_error = "server error HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kBadPayload, "unexpected HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    return parse_headlines(res->body);
  }
  throw Error(ErrorCode::kTransport, last_error + " after " + std::to_string(options.retries + 1) + " attempts");
}

std::vector<FeedSummary> summarize_feed(const std::vector<NewsItem>& items, Method method, std::size_t top_k,
                                        const SummarizerDeps& deps) {
  if (method == Method::kHybrid && deps.hybrid == nullptr) {
    throw Error(ErrorCode::kMissingModel, "hybrid method requires a trained model");
  }
  std::vector<FeedSummary> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    FeedSummary fs{item, std::nullopt, true};
    try {
      fs.summary = summarize({item.content, method, top_k}, deps);
      fs.short_content = fs.summary->sentence_count < kShortContentSentences;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyInput) throw;
    }
    out.push_back(std::move(fs));
  }
  return out;
}

json feed_to_json(const std::vector<FeedSummary>& feed) {
  json out = json::array();
  for (const auto& fs : feed) {
    json entry = {{"title", fs.item.title},
                  {"source", fs.item.source_name},
                  {"url", fs.item.url},
                  {"published_at", fs.item.published_at},
                  {"short_content", fs.short_content}};
    if (fs.summary) {
      const auto s = summary_to_json(*fs.summary);
      entry["summary"] = s.at("summary");
      entry["sentences"] = s.at("sentences");
      entry["method"] = s.at("method");
      entry["elapsed_ms"] = s.at("elapsed_ms");
    } else {
      entry["summary"] = "";
      entry["sentences"] = json::array();
      entry["elapsed_ms"] = 0.0;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace newssum
