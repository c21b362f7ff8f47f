#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "screenbot/llm/prompt.hpp"

namespace screenbot::llm {

using ChunkSink = std::function<void(std::string_view)>;

// Shared flag; copies observe the same cancellation.
class CancelToken {
 public:
  CancelToken() : flag_(std::make_shared<std::atomic<bool>>(false)) {}
  void cancel() const noexcept { flag_->store(true); }
  bool cancelled() const noexcept { return flag_->load(); }

 private:
  std::shared_ptr<std::atomic<bool>> flag_;
};

struct BackendReply {
  std::string text;
  std::vector<std::string> chunks;
  // Provider-reported completion tokens, or -1 when unknown.
  int token_count = -1;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // Streams chunks to `sink` as they arrive. Throws BackendError,
  // ScriptExhaustedError or CancelledError.
  virtual BackendReply generate(const PromptBundle& prompt, const ChunkSink& sink,
                                const CancelToken& cancel) = 0;
  virtual std::string name() const = 0;
};

struct ScriptedBackendOptions {
  // Split each reply into chunks of at most this many code points.
  std::size_t chunk_codepoints = 4;
  // Sleep before the first chunk of every reply.
  std::chrono::milliseconds delay{0};
  // Start over at the end of the script instead of failing.
  bool cycle = false;
};

// Replays a fixed list of replies in order; every prompt it saw is kept for
// inspection.
class ScriptedBackend final : public ChatBackend {
 public:
  explicit ScriptedBackend(std::vector<std::string> replies, ScriptedBackendOptions options = {});

  BackendReply generate(const PromptBundle& prompt, const ChunkSink& sink,
                        const CancelToken& cancel) override;
  std::string name() const override { return "scripted"; }

  std::size_t consumed() const;
  std::vector<PromptBundle> prompts() const;

 private:
  std::vector<std::string> replies_;
  ScriptedBackendOptions options_;
  mutable std::mutex mu_;
  std::size_t next_ = 0;
  std::vector<PromptBundle> prompts_;
};

struct RemoteBackendConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-4o";
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 0.7;
  int max_attempts = 3;
  std::chrono::milliseconds timeout{30000};
  std::chrono::milliseconds backoff{250};
};

// Chat-completions endpoint streamed as server-sent events. The credential
// is read from the environment at construction (ConfigError when absent).
// Retries transport errors and 408/429/5xx, but never after the first chunk
// has reached the sink.
class RemoteChatBackend final : public ChatBackend {
 public:
  explicit RemoteChatBackend(RemoteBackendConfig config);

  BackendReply generate(const PromptBundle& prompt, const ChunkSink& sink,
                        const CancelToken& cancel) override;
  std::string name() const override { return "remote:" + config_.model; }

  static nlohmann::json request_body(const PromptBundle& prompt, const RemoteBackendConfig& config);

 private:
  RemoteBackendConfig config_;
  std::string api_key_;
};

// Splits on code point boundaries.
std::vector<std::string> split_codepoints(std::string_view text, std::size_t per_chunk);

// Whitespace words plus one per CJK character.
int approx_token_count(std::string_view text);

}  // namespace screenbot::llm
