#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "newssum/newsfeed.hpp"
#include "newssum/summarizer.hpp"

namespace httplib {
class Server;
}

namespace newssum {

inline constexpr std::size_t kMaxRequestBytes = 1 << 20;
inline constexpr std::size_t kMaxRequestSentences = 2000;

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  Method default_method = Method::kGraph;
  std::size_t default_top_k = kDefaultTopK;
  std::optional<std::string> model_path;
  std::optional<std::string> news_endpoint;  // e.g. https://newsapi.org
  std::string news_api_key;
  std::size_t news_page_size = 20;
  FetchOptions fetch;

  // Throws Error{kInvalidArgument}.
  void validate() const;
};

struct HttpReply {
  int status = 200;
  std::string body;  // JSON
};

// Stateless request handlers over immutable dependencies. The hybrid model
// (if configured) is loaded once in the constructor.
class SummaryService {
 public:
  explicit SummaryService(ServiceConfig config, SummarizerDeps deps = {});
  ~SummaryService();

  SummaryService(const SummaryService&) = delete;
  SummaryService& operator=(const SummaryService&) = delete;

  // POST /summarize {text, method?, top_k?}
  HttpReply handle_summarize(std::string_view body) const;
  // GET /live?q=&method=
  HttpReply handle_live(const std::optional<std::string>& query, const std::optional<std::string>& method) const;
  // GET /healthz
  HttpReply handle_health() const;

  // Binds and serves until stop(). Throws Error{kIoError} if the address
  // cannot be bound. Pass port 0 to bind an ephemeral port (see port()).
  void run();
  // Binds without blocking; returns the bound port.
  int bind();
  void listen_after_bind();
  void stop();
  int port() const noexcept { return bound_port_; }

  const SummarizerDeps& deps() const noexcept { return deps_; }

 private:
  void register_routes();

  ServiceConfig config_;
  std::shared_ptr<const HybridModel> model_;
  SummarizerDeps deps_;
  std::unique_ptr<httplib::Server> server_;
  int bound_port_ = 0;
};

}  // namespace newssum
