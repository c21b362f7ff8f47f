#include <thread>

#include <json.hpp>

#include "../core/http_support.hpp"
#include "screenbot/rag/embedding.hpp"

namespace screenbot::rag {

RemoteEmbedder::RemoteEmbedder(RemoteEmbedderConfig config)
    : config_(std::move(config)), api_key_(detail::require_env(config_.api_key_env)) {
  if (config_.max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
}

EmbeddingVector RemoteEmbedder::embed(std::string_view text) {
  auto client = detail::make_http_client(config_.base_url, config_.timeout);
  const nlohmann::json body{{"model", config_.model}, {"input", std::string(text)}};
  const httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};

  int last_status = 0;
  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    auto res = client->Post(config_.path, headers, body.dump(), "application/json");
    if (!res) {
      last_status = 0;
      last_error = httplib::to_string(res.error());
    } else if (res->status == 200) {
      try {
        const auto j = nlohmann::json::parse(res->body);
        auto values = j.at("data").at(0).at("embedding").get<std::vector<double>>();
        if (values.size() != config_.dim) {
          throw ProviderError("embedding provider returned dim " + std::to_string(values.size()) +
                                  ", expected " + std::to_string(config_.dim),
                              attempt, res->status);
        }
        return EmbeddingVector::normalized(std::move(values));
      } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("malformed embedding response: ") + e.what(), attempt,
                            res->status);
      }
    } else {
      last_status = res->status;
      last_error = "HTTP " + std::to_string(res->status);
      if (!detail::retryable_status(res->status)) {
        throw ProviderError("embedding request failed: " + last_error, attempt, last_status);
      }
    }
    if (attempt < config_.max_attempts) std::this_thread::sleep_for(config_.backoff * attempt);
  }
  throw ProviderError("embedding request failed after " + std::to_string(config_.max_attempts) +
                          " attempts: " + last_error,
                      config_.max_attempts, last_status);
}

}  // namespace screenbot::rag
