#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "screenbot/core/clock.hpp"
#include "screenbot/dialogue/session_state.hpp"
#include "screenbot/dialogue/transition_policy.hpp"
#include "screenbot/llm/backend.hpp"
#include "screenbot/llm/gateway.hpp"
#include "screenbot/phq9/instrument.hpp"
#include "screenbot/phq9/summary.hpp"
#include "screenbot/rag/retrieval.hpp"
#include "screenbot/safety/safety_guard.hpp"

namespace screenbot::dialogue {

enum class ReplyKind {
  Greeting,
  Rapport,
  Question,
  Clarification,
  Summary,
  Feedback,
  Crisis,
  Resume,
  Closing,
};

std::string_view reply_kind_name(ReplyKind kind) noexcept;

struct ReplyPlan {
  ReplyKind kind = ReplyKind::Rapport;
  Role role = Role::Bot;
  std::string text;
  std::optional<int> item;           // the item being asked or clarified
  std::vector<std::string> options;  // canonical anchors for that item
  std::vector<safety::HelplineEntry> helplines;
  std::optional<phq9::SummaryDocument> summary;
  // Generation failed and a templated apology was used instead.
  bool degraded = false;
  int token_count = 0;
};

struct AdvanceResult {
  SessionState state;
  ReplyPlan reply;
  std::vector<EngineEvent> events;
  std::vector<TurnRecord> records;  // user record, then the reply record

  // Stamps the reply record in both `records` and the state transcript.
  void set_latency(const llm::TurnLatency& latency);
};

using SafetySource = std::function<std::shared_ptr<const safety::SafetyGuard>()>;

SafetySource fixed_safety(std::shared_ptr<const safety::SafetyGuard> guard);
SafetySource reloadable_safety(std::shared_ptr<safety::ReloadableSafetyGuard> guard);

struct EngineDeps {
  std::shared_ptr<const phq9::Instrument> instrument;
  SafetySource safety;
  std::shared_ptr<llm::LlmGateway> gateway;
  std::shared_ptr<const rag::Retriever> retriever;  // optional
  std::shared_ptr<TransitionPolicy> policy;
  std::shared_ptr<Clock> clock;
};

struct EngineConfig {
  std::size_t transcript_window = 12;
  std::size_t k_per_store = 3;
  // Clarifications with explanation and examples before only the four
  // options are re-presented.
  int soft_clarifications = 2;
  // Code points per streamed chunk of templated replies.
  std::size_t template_chunk = 8;
};

// Drives the rapport / screening / feedback protocol. Stateless between
// calls: the caller owns SessionState and must serialize calls per session.
class DialogueEngine {
 public:
  DialogueEngine(EngineDeps deps, EngineConfig config = {});

  // Initial state plus the greeting record. Throws UnsupportedLanguageError.
  AdvanceResult open(std::string session_id, Language lang, std::string country) const;

  // Throws ClosedError for a closed session. Backend failures never
  // propagate: the reply degrades to a templated apology.
  AdvanceResult advance(const SessionState& state, std::string_view user_input,
                        const llm::ChunkSink& sink = {},
                        const llm::CancelToken& cancel = {}) const;

  // Closes the session with a system record carrying SessionClosed.
  AdvanceResult close(const SessionState& state, std::string reason) const;

  // Summary for a completed session; IncompleteResultError otherwise.
  phq9::SummaryDocument summary(const SessionState& state) const;

  const phq9::Instrument& instrument() const noexcept { return *deps_.instrument; }
  const EngineConfig& config() const noexcept { return config_; }

 private:
  EngineDeps deps_;
  EngineConfig config_;
};

}  // namespace screenbot::dialogue
