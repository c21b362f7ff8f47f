#pragma once

#include <string>

#include <json.hpp>

#include "screenbot/dialogue/engine.hpp"
#include "screenbot/dialogue/session_state.hpp"

namespace screenbot::service {

// {session_id, turn_index, role, content, phase, events[], latency}
nlohmann::json wire_turn(const std::string& session_id, const dialogue::TurnRecord& record);

// Session view for GET /sessions/{id}, including the state hash.
nlohmann::json wire_session(const dialogue::SessionState& state);

// Engine event as streamed; crisis events carry the helpline payload.
nlohmann::json wire_event(const dialogue::EngineEvent& ev, const dialogue::ReplyPlan& reply);

nlohmann::json wire_reply(const dialogue::ReplyPlan& reply);

// One server-sent event frame.
std::string sse_frame(std::string_view event, const nlohmann::json& data);

}  // namespace screenbot::service
