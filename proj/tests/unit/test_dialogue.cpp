#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "engine_support.hpp"
#include "scenarios.hpp"
#include "screenbot/core/errors.hpp"
#include "screenbot/dialogue/session_log.hpp"
#include "screenbot/dialogue/session_manager.hpp"

using namespace screenbot;
using namespace screenbot::dialogue;
using namespace std::chrono_literals;

namespace {

template <class E>
int count_events(const std::vector<TurnRecord>& records) {
  int n = 0;
  for (const auto& r : records)
    for (const auto& ev : r.events) n += std::holds_alternative<E>(ev) ? 1 : 0;
  return n;
}

template <class E>
bool has_event(const AdvanceResult& res) {
  for (const auto& ev : res.events)
    if (std::holds_alternative<E>(ev)) return true;
  return false;
}

std::string to_jsonl(const std::vector<TurnRecord>& records) {
  std::string out;
  for (const auto& r : records) out += to_json(r).dump() + "\n";
  return out;
}

testsupport::Drive golden_drive() {
  auto rig = testsupport::make_rig({.replies = testsupport::golden_replies(),
                                    .backend = {.cycle = false}});
  return testsupport::drive(*rig.engine, testsupport::golden_inputs(), Language::English, "UK",
                            "golden-0001");
}

std::filesystem::path golden_path() { return testsupport::fixture_dir() / "golden_session.jsonl"; }

}  // namespace

TEST_CASE("phase and event JSON round trip") {
  const std::vector<Phase> phases{Rapport{}, Screening{4, 2}, Feedback{},
                                  CrisisHold{Screening{7, 1}}, CrisisHold{Feedback{}}};
  for (const auto& p : phases) CHECK(phase_from_json(to_json(p)) == p);
  CHECK(phase_tag(Phase{CrisisHold{Rapport{}}}) == "crisis_hold");

  const std::vector<EngineEvent> events{
      SessionOpened{"zh", "CN"},          PhaseTransition{"rapport", "screening", 1},
      PhaseTransition{"screening", "feedback", std::nullopt},
      ClarificationIssued{2, 1},          ScoreRecorded{5, 3},
      CrisisTriggered{"end my life"},     ResultReady{13, "Moderate"},
      SessionClosed{"idle"}};
  for (const auto& ev : events) CHECK(event_from_json(to_json(ev)) == ev);
  CHECK(to_json(events[1])["type"] == "phase_transition");
  CHECK_THROWS_AS(event_from_json({{"type", "mystery"}}), IntegrityError);
  CHECK_THROWS_AS(event_from_json({{"type", "score_recorded"}}), IntegrityError);
}

TEST_CASE("golden session") {
  const auto d = golden_drive();
  const std::string actual = to_jsonl(d.records);

  if (std::getenv("SCREENBOT_UPDATE_GOLDEN")) {
    std::ofstream(golden_path(), std::ios::binary) << actual;
  }
  std::ifstream in(golden_path(), std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << golden_path());
  std::stringstream expected;
  expected << in.rdbuf();
  CHECK(actual == expected.str());

  CHECK(count_events<ClarificationIssued>(d.records) == 1);
  CHECK(count_events<CrisisTriggered>(d.records) == 1);
  CHECK(count_events<ScoreRecorded>(d.records) == 9);
  CHECK(count_events<ResultReady>(d.records) == 1);
  bool crisis_lists_samaritans = false;
  for (const auto& r : d.records) {
    for (const auto& ev : r.events) {
      if (std::holds_alternative<CrisisTriggered>(ev)) {
        crisis_lists_samaritans = r.text.find("116 123") != std::string::npos;
        CHECK(r.role == Role::System);
      }
      if (const auto* rr = std::get_if<ResultReady>(&ev)) {
        CHECK(rr->total == testsupport::kGoldenTotal);
        CHECK(rr->band == testsupport::kGoldenBand);
      }
    }
  }
  CHECK(crisis_lists_samaritans);
  REQUIRE(d.state.result.has_value());
  CHECK(d.state.result->total() == testsupport::kGoldenTotal);
  CHECK(std::holds_alternative<Feedback>(d.state.phase));
  CHECK(d.state.rapport_turns == 4);

  // Same inputs, same bytes.
  CHECK(to_jsonl(golden_drive().records) == actual);
}

TEST_CASE("advance examples") {
  SUBCASE("19 rapport turns then a plain message forces Screening") {
    auto rig = testsupport::make_rig();
    auto d = testsupport::drive(*rig.engine, std::vector<std::string>(19, "just chatting"));
    REQUIRE(std::holds_alternative<Rapport>(d.state.phase));
    CHECK(d.state.rapport_turns == 19);
    const auto res = rig.engine->advance(d.state, "tell me about sleep");
    REQUIRE(res.events.size() == 1);
    CHECK(res.events[0] == EngineEvent{PhaseTransition{"rapport", "screening", 1}});
    CHECK(res.reply.kind == ReplyKind::Question);
    CHECK(res.reply.text.find("PHQ-9") != std::string::npos);
    CHECK(res.state.phase == Phase{Screening{1, 0}});
    CHECK(res.state.rapport_turns == 20);
  }
  SUBCASE("item 5, D records 3 and asks item 6") {
    auto rig = testsupport::make_rig();
    auto d = testsupport::drive(*rig.engine, testsupport::inputs_to_item(5));
    REQUIRE(d.state.phase == Phase{Screening{5, 0}});
    const auto res = rig.engine->advance(d.state, "D");
    CHECK(res.state.partial_scores.at(5).value() == 3);
    CHECK(res.state.phase == Phase{Screening{6, 0}});
    CHECK(res.reply.item == 6);
    CHECK(res.reply.text.find("Question 6 of 9") != std::string::npos);
    CHECK(res.reply.options.size() == 4);
  }
  SUBCASE("maybe sometimes? is clarified, never scored") {
    auto rig = testsupport::make_rig();
    auto d = testsupport::drive(*rig.engine, testsupport::inputs_to_item(2));
    const auto res = rig.engine->advance(d.state, "maybe sometimes?");
    REQUIRE(res.events.size() == 1);
    CHECK(res.events[0] == EngineEvent{ClarificationIssued{2, 1}});
    CHECK(res.state.phase == Phase{Screening{2, 1}});
    CHECK(res.state.partial_scores.count(2) == 0);
    CHECK(res.reply.kind == ReplyKind::Clarification);
  }
  SUBCASE("feedback has no turn limit") {
    std::vector<std::string> in = testsupport::inputs_to_item(10);
    auto rig = testsupport::make_rig();
    auto d = testsupport::drive(*rig.engine, in);
    REQUIRE(std::holds_alternative<Feedback>(d.state.phase));
    for (int i = 0; i < 50; ++i) {
      auto res = rig.engine->advance(d.state, "thanks, tell me more");
      CHECK(res.reply.kind == ReplyKind::Feedback);
      CHECK(res.events.empty());
      d.state = res.state;
    }
    CHECK(std::holds_alternative<Feedback>(d.state.phase));
    CHECK_FALSE(d.state.closed);
  }
}

TEST_CASE("crisis interrupts every phase") {
  auto rig = testsupport::make_rig();
  const std::vector<std::pair<std::string, std::vector<std::string>>> prefixes{
      {"rapport", {"hello"}},
      {"screening", testsupport::inputs_to_item(3)},
      {"feedback", testsupport::inputs_to_item(10)},
      {"crisis_hold", {"I want to end my life"}},
  };
  for (const auto& [tag, inputs] : prefixes) {
    CAPTURE(tag);
    auto d = testsupport::drive(*rig.engine, inputs);
    REQUIRE(phase_tag(d.state.phase) == tag);
    const auto res = rig.engine->advance(d.state, "Some days I think I should end my life.");
    CHECK(has_event<CrisisTriggered>(res));
    REQUIRE(std::holds_alternative<CrisisHold>(res.state.phase));
    CHECK(res.reply.kind == ReplyKind::Crisis);
    CHECK(res.reply.text.find("116 123") != std::string::npos);
    CHECK_FALSE(res.reply.helplines.empty());
    const auto held = std::get<CrisisHold>(res.state.phase).resume_to;
    if (tag != "crisis_hold") CHECK(phase_tag(held) == tag);
  }
}

TEST_CASE("crisis hold choices") {
  auto rig = testsupport::make_rig();
  auto d = testsupport::drive(*rig.engine, {"ready", "B", "I want to kill myself"});
  REQUIRE(std::get<CrisisHold>(d.state.phase).resume_to == ActivePhase{Screening{2, 0}});

  SUBCASE("other input repeats the message with the choice") {
    const auto res = rig.engine->advance(d.state, "I don't know");
    CHECK(res.events.empty());
    CHECK(std::holds_alternative<CrisisHold>(res.state.phase));
    CHECK(res.reply.text.find("\"resume\"") != std::string::npos);
    CHECK(res.state.partial_scores.size() == 1);
  }
  SUBCASE("resume returns to the same item") {
    const auto res = rig.engine->advance(d.state, "Resume.");
    CHECK(res.events.at(0) == EngineEvent{PhaseTransition{"crisis_hold", "screening", 2}});
    CHECK(res.state.phase == Phase{Screening{2, 0}});
    CHECK(res.reply.text.find("Question 2 of 9") != std::string::npos);
  }
  SUBCASE("end closes the session") {
    const auto res = rig.engine->advance(d.state, "end");
    CHECK(res.state.closed);
    CHECK(res.reply.text.find("116 123") != std::string::npos);
    CHECK_THROWS_AS(rig.engine->advance(res.state, "hello?"), ClosedError);
  }
  SUBCASE("a crisis turn in rapport does not count toward the ceiling") {
    auto e = testsupport::drive(*rig.engine, {"hi", "I want to end my life", "continue"});
    CHECK(e.state.rapport_turns == 1);
    CHECK(std::holds_alternative<Rapport>(e.state.phase));
  }
  SUBCASE("mandarin resume keyword") {
    auto z = testsupport::drive(*rig.engine, {"我不想活了", "继续"}, Language::Mandarin, "CN");
    CHECK(std::holds_alternative<Rapport>(z.state.phase));
  }
}

TEST_CASE("clarification escalates to options only") {
  auto rig = testsupport::make_rig();
  auto d = testsupport::drive(*rig.engine, testsupport::inputs_to_item(3));
  for (int attempt = 1; attempt <= 6; ++attempt) {
    auto res = rig.engine->advance(d.state, "it depends");
    CHECK(res.events.at(0) == EngineEvent{ClarificationIssued{3, attempt}});
    const bool soft = res.reply.text.find("For example") != std::string::npos;
    CHECK(soft == (attempt <= 2));
    CHECK(res.reply.text.find("Nearly every day") != std::string::npos);
    CHECK(res.state.partial_scores.count(3) == 0);
    d.state = res.state;
  }
  const auto res = rig.engine->advance(d.state, "c");
  CHECK(res.state.partial_scores.at(3).value() == 2);
  CHECK(res.state.phase == Phase{Screening{4, 0}});
}

TEST_CASE("turn cap is exhaustive over prefixes") {
  auto rig = testsupport::make_rig();
  for (int n = 1; n <= 20; ++n) {
    auto d = testsupport::drive(*rig.engine, std::vector<std::string>(n, "still chatting"));
    CAPTURE(n);
    CHECK(d.state.rapport_turns == n);
    if (n < 20) {
      CHECK(std::holds_alternative<Rapport>(d.state.phase));
      CHECK(count_events<PhaseTransition>(d.records) == 0);
    } else {
      CHECK(d.state.phase == Phase{Screening{1, 0}});
      CHECK(d.records.back().events.at(0) ==
            EngineEvent{PhaseTransition{"rapport", "screening", 1}});
    }
  }
}

TEST_CASE("transition policies") {
  TokenTransitionPolicy token("ready");
  SessionState s = initial_state("p");
  s.rapport_turns = 3;
  s.transcript.push_back({0, Role::User, "Ready!", "rapport", "", std::nullopt, {}});
  CHECK(token.ready(s));
  s.transcript.back().text = "hello";
  CHECK_FALSE(token.ready(s));
  CHECK_FALSE(token.ready(initial_state("q")));

  CHECK(LlmReadinessPolicy::parse_marker("READY"));
  CHECK(LlmReadinessPolicy::parse_marker("ready."));
  CHECK_FALSE(LlmReadinessPolicy::parse_marker("WAIT"));
  CHECK_FALSE(LlmReadinessPolicy::parse_marker("not READY, WAIT"));

  auto clock = std::make_shared<SteppingClock>();
  auto mock = std::make_shared<llm::ScriptedBackend>(std::vector<std::string>{"WAIT", "READY"});
  LlmReadinessPolicy llm_policy(std::make_shared<llm::LlmGateway>(mock, clock));
  s.transcript.back().text = "I'm ok to start";
  CHECK_FALSE(llm_policy.ready(s));
  CHECK(llm_policy.ready(s));
  CHECK_FALSE(llm_policy.ready(s));  // script exhausted counts as WAIT
  CHECK(mock->prompts().at(0).notes.find("READY or WAIT") != std::string::npos);
}

TEST_CASE("prompt carries phase, language and context") {
  auto rig = testsupport::make_rig({.replies = {"ok"}});
  testsupport::drive(*rig.engine, {"my sleep is bad"}, Language::Mandarin, "CN");
  const auto prompts = rig.backend->prompts();
  REQUIRE(prompts.size() == 1);
  CHECK(prompts[0].phase == "rapport");
  CHECK(prompts[0].language_directive.find("Mandarin") != std::string::npos);
  CHECK(prompts[0].context.find("[source: cbt_guide/sleep-hygiene#0]") != std::string::npos);
  CHECK(prompts[0].transcript_window.size() == 1);  // the greeting
}

TEST_CASE("backend failure degrades the reply, not the turn") {
  auto rig = testsupport::make_rig({.replies = {}, .backend = {.cycle = false}});
  auto d = testsupport::drive(*rig.engine, {"hello"});
  REQUIRE(d.turns.size() == 1);
  CHECK(d.turns[0].reply.degraded);
  CHECK(d.turns[0].reply.text.find("trouble") != std::string::npos);
  CHECK(d.state.rapport_turns == 1);
}

TEST_CASE("mandarin session replies in Mandarin") {
  auto rig = testsupport::make_rig();
  auto d = testsupport::drive(*rig.engine, {"ready", "好几天", "也许吧"}, Language::Mandarin, "CN");
  CHECK(d.turns[0].reply.text.find("第1题") != std::string::npos);
  CHECK(d.turns[1].reply.text.find("第2题") != std::string::npos);
  CHECK(d.state.partial_scores.at(1).value() == 1);
  CHECK(d.state.phase == Phase{Screening{2, 1}});
}

TEST_CASE("property: strict item order and no premature classification") {
  auto rig = testsupport::make_rig();
  std::mt19937_64 rng(99);
  const std::vector<std::string> valid{"A", "b", "2", "three", "Several days", "option d"};
  const std::vector<std::string> junk{"maybe", "sometimes?", "b or c", "hmm", "idk", "4",
                                      "not sure", "kind of", "A and D", "lots"};
  for (int trial = 0; trial < 60; ++trial) {
    auto d = testsupport::drive(*rig.engine, {"ready"});
    int expected_item = 1;
    int scores = 0;
    while (!d.state.result) {
      const bool ambiguous = rng() % 3 == 0;
      const auto& in = ambiguous ? junk[rng() % junk.size()] : valid[rng() % valid.size()];
      const auto res = rig.engine->advance(d.state, in);
      for (const auto& ev : res.events) {
        if (const auto* sr = std::get_if<ScoreRecorded>(&ev)) {
          CHECK_FALSE(ambiguous);
          CHECK(sr->item == expected_item);
          ++expected_item;
          ++scores;
        }
        if (std::holds_alternative<ResultReady>(ev)) CHECK(scores == 9);
        if (std::holds_alternative<ClarificationIssued>(ev)) CHECK(ambiguous);
      }
      d.state = res.state;
    }
    CHECK(scores == 9);
  }
}

TEST_CASE("resume and replay") {
  SUBCASE("golden log replays to the live state") {
    const auto d = golden_drive();
    const auto replayed = replay("golden-0001", d.records);
    CHECK(state_hash(replayed) == state_hash(d.state));
    CHECK(std::holds_alternative<Feedback>(replayed.phase));
    CHECK(replayed.result.has_value());
  }
  SUBCASE("committed golden file replays") {
    const auto records = read_log_file(golden_path());
    const auto s = replay("golden-0001", records);
    CHECK(s.result->total() == testsupport::kGoldenTotal);
  }
  SUBCASE("empty log gives a fresh Rapport state") {
    const auto s = replay("fresh", {});
    CHECK(std::holds_alternative<Rapport>(s.phase));
    CHECK(s.rapport_turns == 0);
    CHECK(s.transcript.empty());
  }
  SUBCASE("tampered ordering") {
    auto records = golden_drive().records;
    std::swap(records[3].turn_index, records[4].turn_index);
    CHECK_THROWS_AS(replay("t", records), IntegrityError);
    auto dropped = golden_drive().records;
    dropped.erase(dropped.begin() + 5);
    CHECK_THROWS_AS(replay("t", dropped), IntegrityError);
  }
  SUBCASE("tampered events") {
    auto records = golden_drive().records;
    for (auto& r : records)
      for (auto& ev : r.events)
        if (auto* rr = std::get_if<ResultReady>(&ev)) rr->total += 1;
    CHECK_THROWS_AS(replay("t", records), IntegrityError);
  }
}

TEST_CASE("session log") {
  const auto dir = testsupport::temp_dir("log");
  SessionLog log(dir);
  const auto d = golden_drive();
  log.append("abc", std::span(d.records).first(3));
  log.append("abc", std::span(d.records).subspan(3));
  CHECK(log.read("abc") == d.records);
  CHECK(state_hash(resume(log, "abc")) == state_hash(replay("abc", d.records)));
  CHECK(log.session_ids() == std::vector<std::string>{"abc"});

  CHECK_THROWS_AS(log.read("nope"), NotFoundError);
  CHECK_THROWS_AS(resume(log, "../etc/passwd"), NotFoundError);
  CHECK_FALSE(SessionLog::valid_id("a/b"));

  SUBCASE("torn final line is dropped") {
    { std::ofstream(log.path_for("abc"), std::ios::app) << "{\"turn_index\": 9"; }
    CHECK(log.read("abc") == d.records);
  }
  SUBCASE("corrupt middle line is an integrity error") {
    std::ofstream(log.path_for("bad")) << to_json(d.records[0]).dump() << "\nnot json\n"
                                       << to_json(d.records[1]).dump() << "\n";
    CHECK_THROWS_AS(log.read("bad"), IntegrityError);
  }
  std::filesystem::remove_all(dir);
}

namespace {

struct ManagerRig {
  testsupport::EngineRig rig;
  std::shared_ptr<SessionLog> log;
  std::shared_ptr<SessionManager> manager;
  std::filesystem::path dir;
};

ManagerRig make_manager(testsupport::RigOptions opts = {},
                        std::shared_ptr<llm::SpeechSynthesizer> speech = nullptr) {
  ManagerRig m;
  m.rig = testsupport::make_rig(std::move(opts));
  m.dir = testsupport::temp_dir("mgr");
  m.log = std::make_shared<SessionLog>(m.dir);
  m.manager = std::make_shared<SessionManager>(m.rig.engine, m.log, speech, m.rig.clock);
  return m;
}

class FailingSpeech final : public llm::SpeechSynthesizer {
 public:
  std::optional<llm::AudioBlob> synthesize(std::string_view, Language) override {
    throw ProviderError("tts offline");
  }
  std::string name() const override { return "failing"; }
};

}  // namespace

TEST_CASE("session manager") {
  SUBCASE("persist, resume in a new manager, identical hash") {
    auto m = make_manager();
    const auto s = m.manager->open(Language::English, "uk");
    CHECK(s.country == "UK");
    CHECK(s.session_id.size() == 32);
    for (const auto& in : {"hi", "ready", "B"}) m.manager->advance(s.session_id, in);
    const auto live = m.manager->snapshot(s.session_id);
    SessionManager fresh(m.rig.engine, m.log, nullptr, m.rig.clock);
    CHECK(state_hash(fresh.snapshot(s.session_id)) == state_hash(live));
    fresh.advance(s.session_id, "C");
    CHECK(fresh.snapshot(s.session_id).partial_scores.at(2).value() == 2);
    CHECK_THROWS_AS(m.manager->snapshot("missing"), NotFoundError);
    std::filesystem::remove_all(m.dir);
  }
  SUBCASE("concurrent advance on one session is busy") {
    auto m = make_manager({.backend = {.delay = 300ms, .cycle = true},
                           .clock = std::make_shared<SystemClock>()});
    const auto s = m.manager->open(Language::English, "UK");
    std::thread slow([&] { m.manager->advance(s.session_id, "hello"); });
    while (m.manager->in_flight() == 0) std::this_thread::sleep_for(1ms);
    CHECK_THROWS_AS(m.manager->advance(s.session_id, "again"), BusyError);
    const auto other = m.manager->open(Language::English, "UK");
    m.manager->advance(other.session_id, "ready");  // other sessions are unaffected
    slow.join();
    CHECK(m.manager->snapshot(s.session_id).transcript.size() == 3);
    std::filesystem::remove_all(m.dir);
  }
  SUBCASE("latency stamping") {
    auto m = make_manager({.backend = {.delay = 20ms, .cycle = true},
                           .clock = std::make_shared<SystemClock>()});
    const auto s = m.manager->open(Language::English, "UK");
    const auto out = m.manager->advance(s.session_id, "hello");
    const auto lat = out.result.records.back().latency.value();
    CHECK(lat.gen_ms >= 20.0);
    CHECK(lat.total_ms >= lat.gen_ms);
    CHECK(lat.tts_ms == 0.0);
    CHECK(m.manager->snapshot(s.session_id).transcript.back().latency == lat);
    CHECK(m.log->read(s.session_id).back().latency == lat);
    std::filesystem::remove_all(m.dir);
  }
  SUBCASE("speech failure leaves the text reply intact") {
    auto plain = make_manager({.replies = {"same words"}});
    auto broken = make_manager({.replies = {"same words"}}, std::make_shared<FailingSpeech>());
    const auto a = plain.manager->open(Language::English, "UK");
    const auto b = broken.manager->open(Language::English, "UK");
    const auto ra = plain.manager->advance(a.session_id, "hello");
    const auto rb = broken.manager->advance(b.session_id, "hello");
    CHECK(rb.speech.degraded);
    CHECK_FALSE(rb.speech.audio.has_value());
    CHECK(rb.result.reply.text == ra.result.reply.text);
    CHECK(rb.result.reply.text == "same words");
    std::filesystem::remove_all(plain.dir);
    std::filesystem::remove_all(broken.dir);
  }
  SUBCASE("idle sessions close after 24 hours") {
    auto clock = std::make_shared<SteppingClock>(0ms, 0ms);
    auto m = make_manager({.clock = clock});
    const auto s = m.manager->open(Language::English, "UK");
    clock->advance(std::chrono::hours(23));
    CHECK(m.manager->close_idle() == 0);
    clock->advance(std::chrono::hours(2));
    CHECK(m.manager->close_idle() == 1);
    CHECK(m.manager->snapshot(s.session_id).closed);
    CHECK_THROWS_AS(m.manager->advance(s.session_id, "hi"), ClosedError);
    CHECK(resume(*m.log, s.session_id).closed);
    CHECK(m.manager->close_idle() == 0);
    std::filesystem::remove_all(m.dir);
  }
}
