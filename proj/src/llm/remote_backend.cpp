#include <thread>

#include <json.hpp>

#include "../core/http_support.hpp"
#include "screenbot/llm/backend.hpp"

namespace screenbot::llm {

RemoteChatBackend::RemoteChatBackend(RemoteBackendConfig config)
    : config_(std::move(config)), api_key_(detail::require_env(config_.api_key_env)) {
  if (config_.max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
  if (config_.model.empty()) throw ConfigError("model name is empty");
}

nlohmann::json RemoteChatBackend::request_body(const PromptBundle& prompt,
                                               const RemoteBackendConfig& config) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : prompt.messages()) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  return {{"model", config.model},
          {"messages", std::move(messages)},
          {"temperature", config.temperature},
          {"stream", true},
          {"stream_options", {{"include_usage", true}}}};
}

namespace {

// Incremental parser for "data: {...}\n\n" frames.
class SseDecoder {
 public:
  template <typename OnData>
  void feed(std::string_view bytes, OnData&& on_data) {
    buffer_.append(bytes);
    std::size_t pos;
    while ((pos = buffer_.find('\n')) != std::string::npos) {
      std::string line = buffer_.substr(0, pos);
      buffer_.erase(0, pos + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.rfind("data:", 0) != 0) continue;
      std::string_view payload(line);
      payload.remove_prefix(5);
      while (!payload.empty() && payload.front() == ' ') payload.remove_prefix(1);
      on_data(payload);
    }
  }

 private:
  std::string buffer_;
};

}  // namespace

BackendReply RemoteChatBackend::generate(const PromptBundle& prompt, const ChunkSink& sink,
                                         const CancelToken& cancel) {
  auto client = detail::make_http_client(config_.base_url, config_.timeout);
  const std::string body = request_body(prompt, config_).dump();
  const httplib::Headers headers{{"Authorization", "Bearer " + api_key_},
                                 {"Accept", "text/event-stream"}};

  int last_status = 0;
  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (cancel.cancelled()) throw CancelledError("generation cancelled");
    BackendReply reply;
    bool emitted = false;
    bool done = false;
    std::string parse_error;
    std::string error_body;
    SseDecoder decoder;

    httplib::Request req;
    req.method = "POST";
    req.path = config_.path;
    req.headers = headers;
    req.body = body;
    req.set_header("Content-Type", "application/json");
    int status = 0;
    req.response_handler = [&](const httplib::Response& r) {
      status = r.status;
      return true;
    };
    req.content_receiver = [&](const char* data, size_t len, uint64_t, uint64_t) {
      if (cancel.cancelled()) return false;
      if (status != 200) {
        error_body.append(data, len);
        return true;
      }
      decoder.feed(std::string_view(data, len), [&](std::string_view payload) {
        if (payload == "[DONE]") {
          done = true;
          return;
        }
        try {
          const auto j = nlohmann::json::parse(payload);
          if (j.contains("usage") && j["usage"].is_object()) {
            reply.token_count = j["usage"].value("completion_tokens", reply.token_count);
          }
          if (!j.contains("choices") || j["choices"].empty()) return;
          const auto& delta = j["choices"][0].value("delta", nlohmann::json::object());
          if (delta.contains("content") && delta["content"].is_string()) {
            std::string piece = delta["content"].get<std::string>();
            if (piece.empty()) return;
            emitted = true;
            if (sink) sink(piece);
            reply.text += piece;
            reply.chunks.push_back(std::move(piece));
          }
        } catch (const nlohmann::json::exception& e) {
          parse_error = e.what();
        }
      });
      return true;
    };

    httplib::Response res;
    httplib::Error err = httplib::Error::Success;
    const bool ok = client->send(req, res, err);
    if (cancel.cancelled()) throw CancelledError("generation cancelled");
    if (!parse_error.empty()) {
      throw BackendError("malformed stream frame: " + parse_error, attempt, status);
    }
    if (ok && status == 200) {
      (void)done;
      if (reply.token_count < 0) reply.token_count = approx_token_count(reply.text);
      return reply;
    }
    if (!ok) {
      last_status = 0;
      last_error = httplib::to_string(err);
    } else {
      last_status = status;
      last_error = "HTTP " + std::to_string(status);
      if (!detail::retryable_status(status)) {
        throw BackendError("chat request failed: " + last_error, attempt, status);
      }
    }
    // Text already shown to the user cannot be retracted, so no retry.
    if (emitted) {
      throw BackendError("chat stream interrupted: " + last_error, attempt, last_status);
    }
    if (attempt < config_.max_attempts) std::this_thread::sleep_for(config_.backoff * attempt);
  }
  throw BackendError("chat request failed after " + std::to_string(config_.max_attempts) +
                         " attempts: " + last_error,
                     config_.max_attempts, last_status);
}

}  // namespace screenbot::llm
