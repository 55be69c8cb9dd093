#include "newssum/service.hpp"

#include "httplib.h"
#include "newssum/error.hpp"

namespace newssum {
namespace {

using nlohmann::json;

HttpReply error_reply(int status, std::string_view message) {
  return {status, json{{"error", message}}.dump()};
}

int status_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kEmptyInput:
      return 422;
    case ErrorCode::kTooManySentences:
      return 413;
    case ErrorCode::kMissingModel:
    case ErrorCode::kFeatureSpaceMismatch:
      return 501;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParseError:
      return 400;
    case ErrorCode::kRateLimited:
      return 429;
    case ErrorCode::kAuthError:
    case ErrorCode::kTransport:
    case ErrorCode::kBadPayload:
      return 502;
    default:
      return 500;
  }
}

}  // namespace

void ServiceConfig::validate() const {
  if (port < 0 || port > 65535) throw Error(ErrorCode::kInvalidArgument, "port out of range");
  if (default_top_k < 1) throw Error(ErrorCode::kInvalidArgument, "default top_k must be at least 1");
  if (default_method == Method::kHybrid && !model_path) {
    throw Error(ErrorCode::kInvalidArgument, "default method hybrid needs --model");
  }
}

SummaryService::SummaryService(ServiceConfig config, SummarizerDeps deps)
    : config_(std::move(config)), deps_(std::move(deps)), server_(std::make_unique<httplib::Server>()) {
  config_.validate();
  if (config_.model_path) {
    model_ = std::make_shared<const HybridModel>(load_model(*config_.model_path));
    deps_.hybrid = model_.get();
  }
  deps_.max_sentences = kMaxRequestSentences;
  register_routes();
}

SummaryService::~SummaryService() { stop(); }

HttpReply SummaryService::handle_summarize(std::string_view body) const {
  if (body.size() > kMaxRequestBytes) return error_reply(413, "request body exceeds 1 MiB");
  const auto doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) return error_reply(400, "body must be a JSON object");

  auto text = doc.find("text");
  if (text == doc.end() || !text->is_string()) return error_reply(400, "'text' must be a string");

  SummaryRequest req{text->get<std::string>(), config_.default_method, config_.default_top_k};
  if (auto m = doc.find("method"); m != doc.end() && !m->is_null()) {
    if (!m->is_string()) return error_reply(400, "'method' must be a string");
    const auto parsed = parse_method(m->get<std::string>());
    if (!parsed) return error_reply(400, "unknown method '" + m->get<std::string>() + "'");
    req.method = *parsed;
  }
  if (auto k = doc.find("top_k"); k != doc.end() && !k->is_null()) {
    if (!k->is_number_integer() || k->get<long long>() < 1) return error_reply(400, "'top_k' must be a positive integer");
    req.top_k = k->get<std::size_t>();
  }
  if (req.method == Method::kHybrid && deps_.hybrid == nullptr) {
    return error_reply(501, "hybrid method is not available: no model loaded");
  }

  try {
    return {200, summary_to_json(summarize(req, deps_)).dump()};
  } catch (const Error& e) {
    return error_reply(status_for(e), e.what());
  }
}

HttpReply SummaryService::handle_live(const std::optional<std::string>& query,
                                      const std::optional<std::string>& method) const {
  Method m = config_.default_method;
  if (method && !method->empty()) {
    const auto parsed = parse_method(*method);
    if (!parsed) return error_reply(400, "unknown method '" + *method + "'");
    m = *parsed;
  }
  if (m == Method::kHybrid && deps_.hybrid == nullptr) {
    return error_reply(501, "hybrid method is not available: no model loaded");
  }
  if (!config_.news_endpoint || config_.news_api_key.empty()) {
    return error_reply(503, "live news is not configured (need --news-endpoint and NEWS_API_KEY)");
  }

  FeedQuery fq;
  fq.query = query;
  fq.page_size = config_.news_page_size;
  fq.api_key = config_.news_api_key;
  try {
    const auto feed = fetch_headlines(fq, *config_.news_endpoint, config_.fetch);
    return {200, feed_to_json(summarize_feed(feed.items, m, config_.default_top_k, deps_)).dump()};
  } catch (const Error& e) {
    return error_reply(status_for(e), e.what());
  }
}

HttpReply SummaryService::handle_health() const {
  json methods = json::array({"baseline", "graph"});
  if (deps_.hybrid != nullptr) methods.push_back("hybrid");
  return {200, json{{"status", "ok"}, {"methods_available", std::move(methods)}}.dump()};
}

void SummaryService::register_routes() {
  auto& srv = *server_;
  srv.set_payload_max_length(kMaxRequestBytes);

  auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  };

  srv.Post("/summarize", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_summarize(req.body));
  });
  srv.Get("/live", [this, send](const httplib::Request& req, httplib::Response& res) {
    auto param = [&](const char* key) -> std::optional<std::string> {
      if (!req.has_param(key)) return std::nullopt;
      return req.get_param_value(key);
    };
    send(res, handle_live(param("q"), param("method")));
  });
  srv.Get("/healthz", [this, send](const httplib::Request&, httplib::Response& res) { send(res, handle_health()); });

  // Oversized bodies are rejected by httplib before routing; give them the
  // same JSON error shape.
  srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      const auto message = res.status == 413 ? "request body exceeds 1 MiB" : httplib::status_message(res.status);
      res.set_content(json{{"error", message}}.dump(), "application/json");
    }
  });
}

int SummaryService::bind() {
  if (config_.port == 0) {
    bound_port_ = server_->bind_to_any_port(config_.host);
    if (bound_port_ <= 0) throw Error(ErrorCode::kIoError, "cannot bind " + config_.host);
  } else {
    if (!server_->bind_to_port(config_.host, config_.port)) {
      throw Error(ErrorCode::kIoError, "cannot bind " + config_.host + ":" + std::to_string(config_.port));
    }
    bound_port_ = config_.port;
  }
  return bound_port_;
}

void SummaryService::listen_after_bind() { server_->listen_after_bind(); }

void SummaryService::run() {
  bind();
  listen_after_bind();
}

void SummaryService::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

}  // namespace newssum
