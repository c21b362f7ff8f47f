#include "screenbot/dialogue/session_state.hpp"

#include "screenbot/core/errors.hpp"
#include "screenbot/core/hash.hpp"

namespace screenbot::dialogue {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void corrupt(const TurnRecord& r, const std::string& why) {
  throw IntegrityError("turn " + std::to_string(r.turn_index) + ": " + why);
}

}  // namespace

std::string_view role_name(Role role) noexcept {
  switch (role) {
    case Role::User:
      return "user";
    case Role::Bot:
      return "bot";
    case Role::System:
    default:
      return "system";
  }
}

Role parse_role(std::string_view name) {
  if (name == "user") return Role::User;
  if (name == "bot") return Role::Bot;
  if (name == "system") return Role::System;
  throw IntegrityError("unknown role '" + std::string(name) + "'");
}

nlohmann::json to_json(const TurnRecord& r) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& ev : r.events) events.push_back(to_json(ev));
  nlohmann::json j{{"turn_index", r.turn_index}, {"role", role_name(r.role)},
                   {"text", r.text},             {"phase", r.phase},
                   {"timestamp", r.timestamp},   {"events", std::move(events)}};
  j["latency"] = r.latency ? llm::to_json(*r.latency) : nlohmann::json(nullptr);
  return j;
}

TurnRecord record_from_json(const nlohmann::json& j) {
  try {
    TurnRecord r;
    r.turn_index = j.at("turn_index").get<int>();
    r.role = parse_role(j.at("role").get<std::string>());
    r.text = j.at("text").get<std::string>();
    r.phase = j.at("phase").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    if (j.contains("latency") && !j["latency"].is_null()) {
      r.latency = llm::latency_from_json(j["latency"]);
    }
    for (const auto& ev : j.at("events")) r.events.push_back(event_from_json(ev));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError(std::string("malformed turn record: ") + e.what());
  }
}

int SessionState::remaining_items() const noexcept {
  return phq9::kItemCount - static_cast<int>(partial_scores.size());
}

nlohmann::json to_json(const SessionState& s) {
  nlohmann::json scores = nlohmann::json::object();
  for (const auto& [item, score] : s.partial_scores) scores[std::to_string(item)] = score.value();
  nlohmann::json result = nullptr;
  if (s.result) {
    std::vector<int> items;
    for (const auto& sc : s.result->item_scores()) items.push_back(sc.value());
    result = {{"item_scores", items},
              {"total", s.result->total()},
              {"band", phq9::band_id(s.result->severity())}};
  }
  nlohmann::json transcript = nlohmann::json::array();
  for (const auto& r : s.transcript) transcript.push_back(to_json(r));
  return {{"session_id", s.session_id},
          {"lang", language_code(s.lang)},
          {"country", s.country},
          {"phase", to_json(s.phase)},
          {"rapport_turns", s.rapport_turns},
          {"partial_scores", std::move(scores)},
          {"result", std::move(result)},
          {"closed", s.closed},
          {"transcript", std::move(transcript)}};
}

std::string state_hash(const SessionState& state) { return hex64(fnv1a64(to_json(state).dump())); }

SessionState initial_state(std::string session_id) {
  SessionState s;
  s.session_id = std::move(session_id);
  return s;
}

void apply_record(SessionState& s, const TurnRecord& r) {
  const int expected = s.transcript.empty() ? 0 : s.transcript.back().turn_index + 1;
  if (r.turn_index != expected) {
    corrupt(r, "expected turn_index " + std::to_string(expected));
  }
  if (s.closed) corrupt(r, "record after session close");

  const bool answers_user =
      r.role != Role::User && !s.transcript.empty() && s.transcript.back().role == Role::User;
  bool crisis = false;
  for (const auto& ev : r.events) crisis = crisis || std::holds_alternative<CrisisTriggered>(ev);

  if (answers_user && !crisis && std::holds_alternative<Rapport>(s.phase)) {
    if (++s.rapport_turns > kRapportTurnLimit) corrupt(r, "rapport turn limit exceeded");
  }

  for (const auto& ev : r.events) {
    std::visit(
        overloaded{
            [&](const SessionOpened& e) {
              if (!s.transcript.empty()) corrupt(r, "session_opened after the first record");
              try {
                s.lang = require_language(e.lang);
              } catch (const UnsupportedLanguageError&) {
                corrupt(r, "unsupported language '" + e.lang + "'");
              }
              s.country = e.country;
            },
            [&](const CrisisTriggered&) {
              if (!std::holds_alternative<CrisisHold>(s.phase)) {
                s.phase = CrisisHold{active_part(s.phase)};
              }
            },
            [&](const PhaseTransition& e) {
              if (e.from != phase_tag(s.phase)) {
                corrupt(r, "transition from '" + e.from + "' while in '" +
                               std::string(phase_tag(s.phase)) + "'");
              }
              if (const auto* hold = std::get_if<CrisisHold>(&s.phase)) {
                if (e.to != phase_tag(hold->resume_to)) corrupt(r, "resume into the wrong phase");
                s.phase = widen(hold->resume_to);
              } else if (e.to == "screening") {
                const int item = e.item.value_or(1);
                if (item < 1 || item > phq9::kItemCount) corrupt(r, "bad item");
                s.phase = Screening{item, 0};
              } else if (e.to == "feedback") {
                if (!s.result) corrupt(r, "feedback before result");
                s.phase = Feedback{};
              } else if (e.to == "rapport") {
                s.phase = Rapport{};
              } else {
                corrupt(r, "unknown target phase '" + e.to + "'");
              }
            },
            [&](const ClarificationIssued& e) {
              auto* sc = std::get_if<Screening>(&s.phase);
              if (!sc || sc->current_item != e.item) corrupt(r, "clarification for wrong item");
              ++sc->clarification_attempts;
              if (e.attempt != sc->clarification_attempts) corrupt(r, "attempt count mismatch");
            },
            [&](const ScoreRecorded& e) {
              auto* sc = std::get_if<Screening>(&s.phase);
              if (!sc || sc->current_item != e.item) corrupt(r, "score for wrong item");
              if (s.partial_scores.count(e.item)) corrupt(r, "item scored twice");
              if (e.value < 0 || e.value > 3) corrupt(r, "score out of range");
              s.partial_scores.emplace(e.item, phq9::ItemScore(e.value));
              if (e.item < phq9::kItemCount) s.phase = Screening{e.item + 1, 0};
            },
            [&](const ResultReady& e) {
              if (s.result) corrupt(r, "second result");
              if (s.remaining_items() != 0) corrupt(r, "result before all items scored");
              std::vector<phq9::ItemScore> scores;
              for (const auto& [item, score] : s.partial_scores) scores.push_back(score);
              auto result = phq9::Phq9Result::from_scores(scores);
              if (result.total() != e.total || phq9::band_id(result.severity()) != e.band) {
                corrupt(r, "result does not match recorded scores");
              }
              s.result = result;
            },
            [&](const SessionClosed&) { s.closed = true; },
        },
        ev);
  }
  s.transcript.push_back(r);
}

SessionState apply_turn(SessionState state, std::span<const TurnRecord> records) {
  for (const auto& r : records) apply_record(state, r);
  return state;
}

SessionState replay(std::string session_id, std::span<const TurnRecord> records) {
  return apply_turn(initial_state(std::move(session_id)), records);
}

}  // namespace screenbot::dialogue
