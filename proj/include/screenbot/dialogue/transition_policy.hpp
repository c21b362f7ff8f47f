#pragma once

#include <memory>
#include <string>

#include "screenbot/dialogue/session_state.hpp"
#include "screenbot/llm/gateway.hpp"

namespace screenbot::dialogue {

// Decides whether rapport has run its course. Consulted only in Rapport,
// with the user's latest message already in the transcript. The 20-turn
// ceiling is enforced by the engine regardless of the answer.
class TransitionPolicy {
 public:
  virtual ~TransitionPolicy() = default;
  virtual bool ready(const SessionState& state) = 0;
};

// Fires when the last user message equals the token after case and
// punctuation folding.
class TokenTransitionPolicy final : public TransitionPolicy {
 public:
  explicit TokenTransitionPolicy(std::string token = "ready");
  bool ready(const SessionState& state) override;

 private:
  std::string token_;
};

// Asks the model for a READY / WAIT marker. Any backend failure counts as
// WAIT.
class LlmReadinessPolicy final : public TransitionPolicy {
 public:
  LlmReadinessPolicy(std::shared_ptr<llm::LlmGateway> gateway, std::size_t window = 12);
  bool ready(const SessionState& state) override;

  static bool parse_marker(std::string_view reply);

 private:
  std::shared_ptr<llm::LlmGateway> gateway_;
  std::size_t window_;
};

}  // namespace screenbot::dialogue
