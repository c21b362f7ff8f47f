#include "screenbot/dialogue/phase.hpp"

#include "screenbot/core/errors.hpp"

namespace screenbot::dialogue {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

nlohmann::json active_to_json(const ActivePhase& p) {
  return std::visit(overloaded{
                        [](const Rapport&) { return nlohmann::json{{"tag", "rapport"}}; },
                        [](const Screening& s) {
                          return nlohmann::json{{"tag", "screening"},
                                                {"current_item", s.current_item},
                                                {"clarification_attempts",
                                                 s.clarification_attempts}};
                        },
                        [](const Feedback&) { return nlohmann::json{{"tag", "feedback"}}; },
                    },
                    p);
}

ActivePhase active_from_json(const nlohmann::json& j) {
  const auto tag = j.at("tag").get<std::string>();
  if (tag == "rapport") return Rapport{};
  if (tag == "feedback") return Feedback{};
  if (tag == "screening") {
    return Screening{j.at("current_item").get<int>(), j.at("clarification_attempts").get<int>()};
  }
  throw IntegrityError("unknown phase tag '" + tag + "'");
}

}  // namespace

std::string_view phase_tag(const ActivePhase& phase) noexcept {
  switch (phase.index()) {
    case 0:
      return "rapport";
    case 1:
      return "screening";
    default:
      return "feedback";
  }
}

std::string_view phase_tag(const Phase& phase) noexcept {
  if (std::holds_alternative<CrisisHold>(phase)) return "crisis_hold";
  return phase_tag(active_part(phase));
}

ActivePhase active_part(const Phase& phase) {
  return std::visit(overloaded{
                        [](const Rapport& p) -> ActivePhase { return p; },
                        [](const Screening& p) -> ActivePhase { return p; },
                        [](const Feedback& p) -> ActivePhase { return p; },
                        [](const CrisisHold& p) -> ActivePhase { return p.resume_to; },
                    },
                    phase);
}

Phase widen(const ActivePhase& phase) {
  return std::visit([](const auto& p) -> Phase { return p; }, phase);
}

nlohmann::json to_json(const Phase& phase) {
  if (const auto* hold = std::get_if<CrisisHold>(&phase)) {
    return {{"tag", "crisis_hold"}, {"resume_to", active_to_json(hold->resume_to)}};
  }
  return active_to_json(active_part(phase));
}

Phase phase_from_json(const nlohmann::json& j) {
  try {
    if (j.at("tag") == "crisis_hold") return CrisisHold{active_from_json(j.at("resume_to"))};
    return widen(active_from_json(j));
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError(std::string("malformed phase: ") + e.what());
  }
}

}  // namespace screenbot::dialogue
