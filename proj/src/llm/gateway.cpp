#include "screenbot/llm/gateway.hpp"

#include <chrono>

#include "screenbot/core/errors.hpp"

namespace screenbot::llm {

namespace {

double elapsed_ms(Clock::mono_point from, Clock::mono_point to) {
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(to - from).count();
  return static_cast<double>(us) / 1000.0;
}

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<LlmGateway::kMaxInFlightCeiling>& s) : s_(s) {
    s_.acquire();
  }
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<LlmGateway::kMaxInFlightCeiling>& s_;
};

std::ptrdiff_t checked_slots(std::ptrdiff_t n) {
  if (n < 1 || n > LlmGateway::kMaxInFlightCeiling) {
    throw ConfigError("max_in_flight must be in [1, " +
                      std::to_string(LlmGateway::kMaxInFlightCeiling) + "]");
  }
  return n;
}

}  // namespace

LlmGateway::LlmGateway(std::shared_ptr<ChatBackend> backend, std::shared_ptr<Clock> clock,
                       std::ptrdiff_t max_in_flight)
    : backend_(std::move(backend)), clock_(std::move(clock)), slots_(checked_slots(max_in_flight)) {
  if (!backend_) throw ConfigError("no chat backend configured");
  if (!clock_) throw ConfigError("no clock configured");
}

GenerationResult LlmGateway::generate(const PromptBundle& prompt, const ChunkSink& sink,
                                      const CancelToken& cancel) {
  SlotGuard slot(slots_);
  const auto start = clock_->mono_now();
  BackendReply reply = backend_->generate(prompt, sink, cancel);
  const auto end = clock_->mono_now();

  GenerationResult out;
  out.text = std::move(reply.text);
  out.stream = std::move(reply.chunks);
  out.token_count = reply.token_count >= 0 ? reply.token_count : approx_token_count(out.text);
  out.latency.gen_ms = elapsed_ms(start, end);
  out.latency.total_ms = out.latency.gen_ms;
  return out;
}

}  // namespace screenbot::llm
