#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "screenbot/core/language.hpp"
#include "screenbot/rag/retrieval.hpp"

namespace screenbot::llm {

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct PromptBundle {
  std::string system_prompt;
  std::string phase;  // "rapport", "screening", "feedback", "crisis_hold"
  std::string language_directive;
  std::string context;  // rendered retrieval sections
  std::string notes;    // session facts the model should know, e.g. the result
  std::vector<ChatMessage> transcript_window;
  std::string user_turn;
  Language lang = Language::English;

  // System message (protocol rules, phase, language directive, context),
  // then the window, then the user turn.
  std::vector<ChatMessage> messages() const;

  // Deterministic flat rendering of messages(), for logging and tests.
  std::string render() const;
};

// What the prompt needs to know about a session. dialogue::SessionState
// converts to this so the gateway does not depend on the engine.
struct PromptInputs {
  Language lang = Language::English;
  std::string phase;
  std::vector<ChatMessage> transcript;  // chronological, user/assistant only
  std::string user_turn;
  std::string notes;
};

std::string system_prompt_text(Language lang);
std::string language_directive(Language lang);

// Retrieval sections in store order, each hit tagged with its source.
std::string render_context(const rag::RetrievalBundle& bundle);

// Keeps the last `window` transcript turns.
PromptBundle assemble_prompt(const PromptInputs& inputs, const rag::RetrievalBundle& bundle,
                             std::size_t window = 12);

}  // namespace screenbot::llm
