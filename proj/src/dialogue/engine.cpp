#include "screenbot/dialogue/engine.hpp"

#include "screenbot/core/errors.hpp"
#include "screenbot/llm/prompt.hpp"
#include "screenbot/phq9/answer_parser.hpp"
#include "templates.hpp"

namespace screenbot::dialogue {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void stream_text(const std::string& text, std::size_t per_chunk, const llm::ChunkSink& sink) {
  if (!sink) return;
  for (const auto& c : llm::split_codepoints(text, per_chunk)) sink(c);
}

}  // namespace

std::string_view reply_kind_name(ReplyKind kind) noexcept {
  switch (kind) {
    case ReplyKind::Greeting:
      return "greeting";
    case ReplyKind::Rapport:
      return "rapport";
    case ReplyKind::Question:
      return "question";
    case ReplyKind::Clarification:
      return "clarification";
    case ReplyKind::Summary:
      return "summary";
    case ReplyKind::Feedback:
      return "feedback";
    case ReplyKind::Crisis:
      return "crisis";
    case ReplyKind::Resume:
      return "resume";
    case ReplyKind::Closing:
    default:
      return "closing";
  }
}

void AdvanceResult::set_latency(const llm::TurnLatency& latency) {
  if (records.empty()) return;
  records.back().latency = latency;
  if (!state.transcript.empty() && state.transcript.back().turn_index == records.back().turn_index) {
    state.transcript.back().latency = latency;
  }
}

SafetySource fixed_safety(std::shared_ptr<const safety::SafetyGuard> guard) {
  return [guard = std::move(guard)] { return guard; };
}

SafetySource reloadable_safety(std::shared_ptr<safety::ReloadableSafetyGuard> guard) {
  return [guard = std::move(guard)] { return guard->current(); };
}

DialogueEngine::DialogueEngine(EngineDeps deps, EngineConfig config)
    : deps_(std::move(deps)), config_(config) {
  if (!deps_.instrument) throw ConfigError("engine needs an instrument");
  if (!deps_.safety) throw ConfigError("engine needs a safety guard");
  if (!deps_.gateway) throw ConfigError("engine needs an LLM gateway");
  if (!deps_.policy) throw ConfigError("engine needs a transition policy");
  if (!deps_.clock) throw ConfigError("engine needs a clock");
  if (config_.soft_clarifications < 0) throw ConfigError("soft_clarifications must be >= 0");
}

AdvanceResult DialogueEngine::open(std::string session_id, Language lang,
                                   std::string country) const {
  AdvanceResult out;
  out.state = initial_state(std::move(session_id));
  TurnRecord r;
  r.turn_index = 0;
  r.role = Role::Bot;
  r.text = templates::greeting(lang);
  r.phase = "rapport";
  r.timestamp = format_utc(deps_.clock->utc_now());
  r.latency = llm::TurnLatency{};
  r.events.push_back(
      SessionOpened{std::string(language_code(lang)), safety::canonical_country(country)});
  out.events = r.events;
  out.reply.kind = ReplyKind::Greeting;
  out.reply.text = r.text;
  out.records.push_back(r);
  apply_record(out.state, r);
  return out;
}

AdvanceResult DialogueEngine::close(const SessionState& state, std::string reason) const {
  if (state.closed) throw ClosedError("session " + state.session_id + " is closed");
  const auto guard = deps_.safety();
  AdvanceResult out;
  out.state = state;
  TurnRecord r;
  r.turn_index = state.transcript.empty() ? 0 : state.transcript.back().turn_index + 1;
  r.role = Role::System;
  r.phase = std::string(phase_tag(state.phase));
  r.timestamp = format_utc(deps_.clock->utc_now());
  out.reply.kind = ReplyKind::Closing;
  out.reply.role = Role::System;
  out.reply.helplines = guard->helplines_for(state.country, state.lang);
  r.text = templates::closing(out.reply.helplines, reason, state.lang);
  r.events.push_back(SessionClosed{std::move(reason)});
  out.reply.text = r.text;
  out.events = r.events;
  out.records.push_back(r);
  apply_record(out.state, r);
  return out;
}

phq9::SummaryDocument DialogueEngine::summary(const SessionState& state) const {
  if (!state.result) {
    throw IncompleteResultError(std::to_string(state.remaining_items()) + " items remaining");
  }
  const auto guard = deps_.safety();
  return phq9::build_summary(*state.result, state.lang,
                             guard->helplines_for(state.country, state.lang), *deps_.instrument);
}

AdvanceResult DialogueEngine::advance(const SessionState& state, std::string_view user_input,
                                      const llm::ChunkSink& sink,
                                      const llm::CancelToken& cancel) const {
  if (state.closed) throw ClosedError("session " + state.session_id + " is closed");
  const Language lang = state.lang;
  const auto& inst = *deps_.instrument;
  const auto guard = deps_.safety();
  const std::string phase_name(phase_tag(state.phase));

  TurnRecord user;
  user.turn_index = state.transcript.empty() ? 0 : state.transcript.back().turn_index + 1;
  user.role = Role::User;
  user.text = std::string(user_input);
  user.phase = phase_name;
  user.timestamp = format_utc(deps_.clock->utc_now());

  // State with the user's message, as the policy and prompt should see it.
  SessionState heard = state;
  apply_record(heard, user);

  ReplyPlan reply;
  std::vector<EngineEvent> events;
  llm::TurnLatency latency;
  bool streamed = false;

  auto template_reply = [&](ReplyKind kind, std::string text) {
    reply.kind = kind;
    reply.text = std::move(text);
  };

  auto crisis_reply = [&] {
    reply.role = Role::System;
    reply.helplines = guard->helplines_for(state.country, lang);
    template_reply(ReplyKind::Crisis, templates::crisis(guard->messages(lang), reply.helplines));
  };

  auto ask = [&](int item, std::string lead) {
    reply.item = item;
    reply.options = templates::options(inst, item, lang);
    template_reply(ReplyKind::Question, std::move(lead) + templates::question(inst, item, lang));
  };

  auto generate = [&](ReplyKind kind, const std::string& notes) {
    reply.kind = kind;
    rag::RetrievalBundle bundle;
    if (deps_.retriever) bundle = deps_.retriever->query_stores(user_input, config_.k_per_store);
    llm::PromptInputs in;
    in.lang = lang;
    in.phase = phase_name;
    for (const auto& r : state.transcript) {
      in.transcript.push_back({r.role == Role::User ? "user" : "assistant", r.text});
    }
    in.user_turn = std::string(user_input);
    in.notes = notes;
    const auto prompt = llm::assemble_prompt(in, bundle, config_.transcript_window);
    try {
      auto gen = deps_.gateway->generate(prompt, sink, cancel);
      reply.text = std::move(gen.text);
      reply.token_count = gen.token_count;
      latency = gen.latency;
      streamed = true;
    } catch (const BackendError&) {
      reply.degraded = true;
      reply.text = templates::apology(lang);
    }
  };

  if (const auto match = guard->detect_crisis(user_input, lang)) {
    events.push_back(CrisisTriggered{match->phrase});
    crisis_reply();
  } else {
    std::visit(
        overloaded{
            [&](const Rapport&) {
              const bool at_limit = state.rapport_turns + 1 >= kRapportTurnLimit;
              if (at_limit || deps_.policy->ready(heard)) {
                events.push_back(PhaseTransition{"rapport", "screening", 1});
                ask(1, templates::screening_intro(lang) + "\n\n");
              } else {
                generate(ReplyKind::Rapport, "Rapport turn " + std::to_string(state.rapport_turns + 1) +
                                                 " of at most " +
                                                 std::to_string(kRapportTurnLimit) + ".");
              }
            },
            [&](const Screening& s) {
              const auto parsed = phq9::parse_answer(user_input, lang, inst);
              if (const auto* cat = std::get_if<phq9::Categorical>(&parsed)) {
                events.push_back(ScoreRecorded{s.current_item, cat->score.value()});
                if (s.current_item < phq9::kItemCount) {
                  ask(s.current_item + 1, templates::acknowledgement(lang) + "\n\n");
                  return;
                }
                std::vector<phq9::ItemScore> scores;
                for (const auto& [item, score] : state.partial_scores) scores.push_back(score);
                scores.push_back(cat->score);
                const auto result = phq9::Phq9Result::from_scores(scores);
                events.push_back(
                    ResultReady{result.total(), std::string(phq9::band_id(result.severity()))});
                events.push_back(PhaseTransition{"screening", "feedback", std::nullopt});
                auto doc = phq9::build_summary(result, lang, guard->helplines_for(state.country, lang),
                                               inst);
                reply.helplines = doc.helplines;
                template_reply(ReplyKind::Summary, phq9::render_text(doc) + "\n\n" +
                                                       templates::feedback_invitation(lang));
                reply.summary = std::move(doc);
              } else {
                const int attempt = s.clarification_attempts + 1;
                events.push_back(ClarificationIssued{s.current_item, attempt});
                reply.item = s.current_item;
                reply.options = templates::options(inst, s.current_item, lang);
                template_reply(ReplyKind::Clarification,
                               templates::clarification(inst, s.current_item, attempt,
                                                        config_.soft_clarifications, lang));
              }
            },
            [&](const Feedback&) {
              std::string notes;
              if (state.result) {
                notes = "PHQ-9 total " + std::to_string(state.result->total()) + "/27, band " +
                        std::string(phq9::band_id(state.result->severity())) + ", item 9 score " +
                        std::to_string(state.result->item(phq9::kSelfHarmItem).value()) + ".";
              }
              generate(ReplyKind::Feedback, notes);
            },
            [&](const CrisisHold& hold) {
              switch (templates::hold_choice(user_input)) {
                case templates::HoldChoice::Resume: {
                  std::optional<int> item;
                  if (const auto* s = std::get_if<Screening>(&hold.resume_to)) {
                    item = s->current_item;
                    reply.item = item;
                    reply.options = templates::options(inst, s->current_item, lang);
                  }
                  events.push_back(
                      PhaseTransition{"crisis_hold", std::string(phase_tag(hold.resume_to)), item});
                  template_reply(ReplyKind::Resume, templates::resume(inst, hold.resume_to, lang));
                  break;
                }
                case templates::HoldChoice::End:
                  events.push_back(SessionClosed{"user"});
                  reply.role = Role::System;
                  reply.helplines = guard->helplines_for(state.country, lang);
                  template_reply(ReplyKind::Closing,
                                 templates::closing(reply.helplines, "user", lang));
                  break;
                case templates::HoldChoice::None:
                  crisis_reply();
                  break;
              }
            },
        },
        state.phase);
  }

  if (!streamed) stream_text(reply.text, config_.template_chunk, sink);

  TurnRecord bot;
  bot.turn_index = user.turn_index + 1;
  bot.role = reply.role;
  bot.text = reply.text;
  bot.phase = phase_name;
  bot.timestamp = format_utc(deps_.clock->utc_now());
  bot.latency = latency;
  bot.events = events;

  AdvanceResult out;
  out.state = std::move(heard);
  apply_record(out.state, bot);
  out.reply = std::move(reply);
  out.events = std::move(events);
  out.records = {std::move(user), std::move(bot)};
  return out;
}

}  // namespace screenbot::dialogue
