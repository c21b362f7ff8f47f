#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

namespace screenbot::dialogue {

struct Rapport {
  bool operator==(const Rapport&) const = default;
};

struct Screening {
  int current_item = 1;  // 1..9
  int clarification_attempts = 0;
  bool operator==(const Screening&) const = default;
};

struct Feedback {
  bool operator==(const Feedback&) const = default;
};

// Phases a crisis can interrupt and later resume into.
using ActivePhase = std::variant<Rapport, Screening, Feedback>;

struct CrisisHold {
  ActivePhase resume_to;
  bool operator==(const CrisisHold&) const = default;
};

using Phase = std::variant<Rapport, Screening, Feedback, CrisisHold>;

// "rapport", "screening", "feedback", "crisis_hold".
std::string_view phase_tag(const Phase& phase) noexcept;
std::string_view phase_tag(const ActivePhase& phase) noexcept;

nlohmann::json to_json(const Phase& phase);
Phase phase_from_json(const nlohmann::json& j);

// The phase to resume into; a non-crisis phase is returned as is.
ActivePhase active_part(const Phase& phase);
Phase widen(const ActivePhase& phase);

}  // namespace screenbot::dialogue
