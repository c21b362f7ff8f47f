#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "screenbot/core/language.hpp"
#include "screenbot/dialogue/events.hpp"
#include "screenbot/dialogue/phase.hpp"
#include "screenbot/llm/latency.hpp"
#include "screenbot/phq9/scoring.hpp"

namespace screenbot::dialogue {

inline constexpr int kRapportTurnLimit = 20;

enum class Role { User, Bot, System };

std::string_view role_name(Role role) noexcept;
Role parse_role(std::string_view name);  // IntegrityError on unknown names

struct TurnRecord {
  int turn_index = 0;
  Role role = Role::User;
  std::string text;
  std::string phase;      // phase tag when the turn started
  std::string timestamp;  // UTC, RFC 3339
  std::optional<llm::TurnLatency> latency;
  std::vector<EngineEvent> events;

  bool operator==(const TurnRecord&) const = default;
};

nlohmann::json to_json(const TurnRecord& record);
TurnRecord record_from_json(const nlohmann::json& j);

// Everything the engine knows about a session. It holds no personal
// identifiers: the id is random and the locale is a country code.
struct SessionState {
  std::string session_id;
  Language lang = Language::English;
  std::string country;
  Phase phase = Rapport{};
  int rapport_turns = 0;
  std::vector<TurnRecord> transcript;
  std::map<int, phq9::ItemScore> partial_scores;
  std::optional<phq9::Phq9Result> result;
  bool closed = false;

  // Items not yet scored.
  int remaining_items() const noexcept;
};

nlohmann::json to_json(const SessionState& state);

// FNV-1a over the canonical JSON; equal states hash equal.
std::string state_hash(const SessionState& state);

SessionState initial_state(std::string session_id);

// The reducer shared by the live engine and resume. Every state change is
// driven by a record's role and events, so folding a log reproduces the
// live state exactly. Throws IntegrityError when the record cannot follow
// the state (out-of-order index, event inconsistent with the phase, ...).
void apply_record(SessionState& state, const TurnRecord& record);

SessionState apply_turn(SessionState state, std::span<const TurnRecord> records);

SessionState replay(std::string session_id, std::span<const TurnRecord> records);

}  // namespace screenbot::dialogue
