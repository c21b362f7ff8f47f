#include "screenbot/dialogue/transition_policy.hpp"

#include "screenbot/core/errors.hpp"
#include "screenbot/core/text.hpp"

namespace screenbot::dialogue {

TokenTransitionPolicy::TokenTransitionPolicy(std::string token)
    : token_(text::fold_terminal_punct(token)) {
  if (token_.empty()) throw ConfigError("transition token is empty");
}

bool TokenTransitionPolicy::ready(const SessionState& state) {
  for (auto it = state.transcript.rbegin(); it != state.transcript.rend(); ++it) {
    if (it->role == Role::User) return text::fold_terminal_punct(it->text) == token_;
  }
  return false;
}

LlmReadinessPolicy::LlmReadinessPolicy(std::shared_ptr<llm::LlmGateway> gateway, std::size_t window)
    : gateway_(std::move(gateway)), window_(window) {
  if (!gateway_) throw ConfigError("readiness policy needs a gateway");
}

bool LlmReadinessPolicy::parse_marker(std::string_view reply) {
  const auto folded = text::fold_punct_and_space(reply);
  return folded.find("ready") != std::string::npos && folded.find("wait") == std::string::npos;
}

bool LlmReadinessPolicy::ready(const SessionState& state) {
  if (state.transcript.empty()) return false;
  llm::PromptInputs in;
  in.lang = state.lang;
  in.phase = "rapport";
  for (std::size_t i = 0; i + 1 < state.transcript.size(); ++i) {
    const auto& r = state.transcript[i];
    in.transcript.push_back({r.role == Role::User ? "user" : "assistant", r.text});
  }
  in.user_turn = state.transcript.back().text;
  in.notes =
      "Task: do not reply to the user. Decide whether rapport is established and the user is "
      "ready to start the PHQ-9 questionnaire. Answer with exactly one word: READY or WAIT.";
  try {
    const auto gen = gateway_->generate(llm::assemble_prompt(in, {}, window_));
    return parse_marker(gen.text);
  } catch (const BackendError&) {
    return false;
  }
}

}  // namespace screenbot::dialogue
