#pragma once

#include <memory>
#include <semaphore>
#include <string>
#include <vector>

#include "screenbot/core/clock.hpp"
#include "screenbot/llm/backend.hpp"
#include "screenbot/llm/latency.hpp"
#include "screenbot/llm/prompt.hpp"

namespace screenbot::llm {

struct GenerationResult {
  std::string text;
  int token_count = 0;
  TurnLatency latency;  // gen_ms and total_ms set; tts_ms is 0
  std::vector<std::string> stream;
};

// Front door to the generative backend: bounds in-flight requests and
// measures generation latency from request to final chunk.
class LlmGateway {
 public:
  static constexpr std::ptrdiff_t kMaxInFlightCeiling = 1024;

  LlmGateway(std::shared_ptr<ChatBackend> backend, std::shared_ptr<Clock> clock,
             std::ptrdiff_t max_in_flight = 8);

  GenerationResult generate(const PromptBundle& prompt, const ChunkSink& sink = {},
                            const CancelToken& cancel = {});

  ChatBackend& backend() noexcept { return *backend_; }

 private:
  std::shared_ptr<ChatBackend> backend_;
  std::shared_ptr<Clock> clock_;
  std::counting_semaphore<kMaxInFlightCeiling> slots_;
};

}  // namespace screenbot::llm
