#include "screenbot/dialogue/events.hpp"

#include "screenbot/core/errors.hpp"

namespace screenbot::dialogue {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view event_type(const EngineEvent& ev) noexcept {
  static constexpr std::string_view kNames[] = {
      "session_opened", "phase_transition", "clarification_issued", "score_recorded",
      "crisis_triggered", "result_ready", "session_closed"};
  return kNames[ev.index()];
}

nlohmann::json to_json(const EngineEvent& ev) {
  nlohmann::json j = std::visit(
      overloaded{
          [](const SessionOpened& e) {
            return nlohmann::json{{"lang", e.lang}, {"country", e.country}};
          },
          [](const PhaseTransition& e) {
            nlohmann::json j{{"from", e.from}, {"to", e.to}};
            if (e.item) j["item"] = *e.item;
            return j;
          },
          [](const ClarificationIssued& e) {
            return nlohmann::json{{"item", e.item}, {"attempt", e.attempt}};
          },
          [](const ScoreRecorded& e) {
            return nlohmann::json{{"item", e.item}, {"value", e.value}};
          },
          [](const CrisisTriggered& e) { return nlohmann::json{{"match", e.match}}; },
          [](const ResultReady& e) { return nlohmann::json{{"total", e.total}, {"band", e.band}}; },
          [](const SessionClosed& e) { return nlohmann::json{{"reason", e.reason}}; },
      },
      ev);
  j["type"] = event_type(ev);
  return j;
}

EngineEvent event_from_json(const nlohmann::json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "session_opened") {
      return SessionOpened{j.at("lang").get<std::string>(), j.at("country").get<std::string>()};
    }
    if (type == "phase_transition") {
      PhaseTransition e{j.at("from").get<std::string>(), j.at("to").get<std::string>(),
                        std::nullopt};
      if (j.contains("item")) e.item = j.at("item").get<int>();
      return e;
    }
    if (type == "clarification_issued") {
      return ClarificationIssued{j.at("item").get<int>(), j.at("attempt").get<int>()};
    }
    if (type == "score_recorded") {
      return ScoreRecorded{j.at("item").get<int>(), j.at("value").get<int>()};
    }
    if (type == "crisis_triggered") return CrisisTriggered{j.at("match").get<std::string>()};
    if (type == "result_ready") {
      return ResultReady{j.at("total").get<int>(), j.at("band").get<std::string>()};
    }
    if (type == "session_closed") return SessionClosed{j.at("reason").get<std::string>()};
    throw IntegrityError("unknown event type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError(std::string("malformed event: ") + e.what());
  }
}

}  // namespace screenbot::dialogue
