#include "screenbot/service/wire.hpp"

#include "screenbot/safety/helplines.hpp"

namespace screenbot::service {

nlohmann::json wire_turn(const std::string& session_id, const dialogue::TurnRecord& r) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& ev : r.events) events.push_back(dialogue::to_json(ev));
  return {{"session_id", session_id},
          {"turn_index", r.turn_index},
          {"role", dialogue::role_name(r.role)},
          {"content", r.text},
          {"phase", r.phase},
          {"timestamp", r.timestamp},
          {"events", std::move(events)},
          {"latency", r.latency ? llm::to_json(*r.latency) : nlohmann::json(nullptr)}};
}

nlohmann::json wire_session(const dialogue::SessionState& s) {
  nlohmann::json turns = nlohmann::json::array();
  for (const auto& r : s.transcript) turns.push_back(wire_turn(s.session_id, r));
  nlohmann::json scores = nlohmann::json::object();
  for (const auto& [item, score] : s.partial_scores) scores[std::to_string(item)] = score.value();
  return {{"session_id", s.session_id},
          {"lang", language_code(s.lang)},
          {"country", s.country},
          {"phase", dialogue::to_json(s.phase)},
          {"rapport_turns", s.rapport_turns},
          {"partial_scores", std::move(scores)},
          {"remaining_items", s.remaining_items()},
          {"closed", s.closed},
          {"state_hash", dialogue::state_hash(s)},
          {"turns", std::move(turns)}};
}

nlohmann::json wire_event(const dialogue::EngineEvent& ev, const dialogue::ReplyPlan& reply) {
  auto j = dialogue::to_json(ev);
  if (std::holds_alternative<dialogue::CrisisTriggered>(ev)) {
    j["helplines"] = safety::to_json(reply.helplines);
  }
  return j;
}

nlohmann::json wire_reply(const dialogue::ReplyPlan& reply) {
  nlohmann::json j{{"kind", dialogue::reply_kind_name(reply.kind)},
                   {"role", dialogue::role_name(reply.role)},
                   {"options", reply.options},
                   {"helplines", safety::to_json(reply.helplines)},
                   {"degraded", reply.degraded}};
  j["item"] = reply.item ? nlohmann::json(*reply.item) : nlohmann::json(nullptr);
  return j;
}

std::string sse_frame(std::string_view event, const nlohmann::json& data) {
  return "event: " + std::string(event) + "\ndata: " + data.dump() + "\n\n";
}

}  // namespace screenbot::service
