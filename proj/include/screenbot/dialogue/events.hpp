#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace screenbot::dialogue {

struct SessionOpened {
  std::string lang;
  std::string country;
  bool operator==(const SessionOpened&) const = default;
};

struct PhaseTransition {
  std::string from;
  std::string to;
  std::optional<int> item;  // set when entering Screening
  bool operator==(const PhaseTransition&) const = default;
};

struct ClarificationIssued {
  int item = 0;
  int attempt = 0;
  bool operator==(const ClarificationIssued&) const = default;
};

struct ScoreRecorded {
  int item = 0;
  int value = 0;
  bool operator==(const ScoreRecorded&) const = default;
};

struct CrisisTriggered {
  std::string match;  // lexicon phrase
  bool operator==(const CrisisTriggered&) const = default;
};

struct ResultReady {
  int total = 0;
  std::string band;  // band id, e.g. "Moderate"
  bool operator==(const ResultReady&) const = default;
};

struct SessionClosed {
  std::string reason;  // "user", "idle"
  bool operator==(const SessionClosed&) const = default;
};

using EngineEvent = std::variant<SessionOpened, PhaseTransition, ClarificationIssued, ScoreRecorded,
                                 CrisisTriggered, ResultReady, SessionClosed>;

// Wire name: "session_opened", "phase_transition", ...
std::string_view event_type(const EngineEvent& ev) noexcept;

nlohmann::json to_json(const EngineEvent& ev);
// Throws IntegrityError on an unknown type or missing field.
EngineEvent event_from_json(const nlohmann::json& j);

}  // namespace screenbot::dialogue
