#include "screenbot/dialogue/session_manager.hpp"

#include <random>

#include "screenbot/core/errors.hpp"
#include "screenbot/core/hash.hpp"

namespace screenbot::dialogue {

namespace {

double elapsed_ms(Clock::mono_point from, Clock::mono_point to);

class BusyFlag {
 public:
  BusyFlag(std::atomic<bool>& flag, std::atomic<std::size_t>& counter)
      : flag_(flag), counter_(counter) {
    ++counter_;
  }
  ~BusyFlag() {
    flag_.store(false);
    --counter_;
  }
  BusyFlag(const BusyFlag&) = delete;
  BusyFlag& operator=(const BusyFlag&) = delete;

 private:
  std::atomic<bool>& flag_;
  std::atomic<std::size_t>& counter_;
};

double elapsed_ms(Clock::mono_point from, Clock::mono_point to) {
  return static_cast<double>(
             std::chrono::duration_cast<std::chrono::microseconds>(to - from).count()) /
         1000.0;
}

}  // namespace

struct TurnLease::Slot {
  Slot(std::shared_ptr<SessionManager::Entry> e, std::atomic<std::size_t>& counter)
      : entry(std::move(e)), flag(entry->busy, counter) {}
  std::shared_ptr<SessionManager::Entry> entry;
  BusyFlag flag;
};

TurnLease::TurnLease(std::string session_id, std::shared_ptr<Slot> slot)
    : session_id_(std::move(session_id)), slot_(std::move(slot)) {}

TurnLease::TurnLease(TurnLease&& other) noexcept = default;

TurnLease::~TurnLease() = default;

SessionManager::SessionManager(std::shared_ptr<const DialogueEngine> engine,
                               std::shared_ptr<SessionLog> log,
                               std::shared_ptr<llm::SpeechSynthesizer> speech,
                               std::shared_ptr<Clock> clock, std::chrono::hours idle_limit)
    : engine_(std::move(engine)),
      log_(std::move(log)),
      speech_(speech ? std::move(speech) : std::make_shared<llm::NullSpeech>()),
      clock_(std::move(clock)),
      idle_limit_(idle_limit) {
  if (!engine_ || !log_ || !clock_) throw ConfigError("session manager is missing a dependency");
}

std::string SessionManager::new_id() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  for (;;) {
    std::string id = hex64(rng()) + hex64(rng());
    if (!sessions_.count(id) && !log_->exists(id)) return id;
  }
}

SessionState SessionManager::open(Language lang, std::string country) {
  std::lock_guard lock(map_mu_);
  const auto id = new_id();
  auto res = engine_->open(id, lang, std::move(country));
  log_->append(id, res.records);
  auto e = std::make_shared<Entry>();
  e->state = res.state;
  sessions_.emplace(id, e);
  return res.state;
}

std::shared_ptr<SessionManager::Entry> SessionManager::entry(const std::string& session_id) {
  std::lock_guard lock(map_mu_);
  if (auto it = sessions_.find(session_id); it != sessions_.end()) return it->second;
  if (!log_->exists(session_id)) throw NotFoundError("unknown session " + session_id);
  auto e = std::make_shared<Entry>();
  e->state = resume(*log_, session_id);
  sessions_.emplace(session_id, e);
  return e;
}

TurnLease SessionManager::begin_turn(const std::string& session_id) {
  auto e = entry(session_id);
  bool expected = false;
  if (!e->busy.compare_exchange_strong(expected, true)) {
    throw BusyError("session " + session_id + " already has a turn in flight");
  }
  auto slot = std::make_shared<TurnLease::Slot>(e, in_flight_);
  std::lock_guard lock(e->mu);
  if (e->state.closed) throw ClosedError("session " + session_id + " is closed");
  return TurnLease(session_id, std::move(slot));
}

TurnOutcome SessionManager::advance(TurnLease& lease, std::string_view input,
                                    const llm::ChunkSink& sink, const llm::CancelToken& cancel) {
  if (!lease.slot_) throw Error("turn lease already used");
  auto& e = *lease.slot_->entry;
  SessionState current;
  {
    std::lock_guard lock(e.mu);
    current = e.state;
  }
  if (current.closed) throw ClosedError("session " + lease.session_id() + " is closed");

  const auto start = clock_->mono_now();
  TurnOutcome out{engine_->advance(current, input, sink, cancel), {}};
  out.speech = llm::synthesize_speech(*speech_, out.result.reply.text, current.lang, *clock_);

  llm::TurnLatency latency = out.result.records.back().latency.value_or(llm::TurnLatency{});
  latency.tts_ms = out.speech.tts_ms;
  latency.total_ms = std::max(elapsed_ms(start, clock_->mono_now()), latency.gen_ms);
  out.result.set_latency(latency);

  log_->append(lease.session_id(), out.result.records);
  {
    std::lock_guard lock(e.mu);
    e.state = out.result.state;
  }
  return out;
}

TurnOutcome SessionManager::advance(const std::string& session_id, std::string_view input,
                                    const llm::ChunkSink& sink, const llm::CancelToken& cancel) {
  auto lease = begin_turn(session_id);
  return advance(lease, input, sink, cancel);
}

SessionState SessionManager::snapshot(const std::string& session_id) {
  auto e = entry(session_id);
  std::lock_guard lock(e->mu);
  return e->state;
}

std::size_t SessionManager::close_idle() {
  std::vector<std::pair<std::string, std::shared_ptr<Entry>>> all;
  {
    std::lock_guard lock(map_mu_);
    all.assign(sessions_.begin(), sessions_.end());
  }
  const auto cutoff = clock_->utc_now() - idle_limit_;
  std::size_t closed = 0;
  for (auto& [id, e] : all) {
    bool expected = false;
    if (!e->busy.compare_exchange_strong(expected, true)) continue;
    BusyFlag flag(e->busy, in_flight_);
    SessionState current;
    {
      std::lock_guard lock(e->mu);
      current = e->state;
    }
    if (current.closed || current.transcript.empty()) continue;
    if (parse_utc(current.transcript.back().timestamp) > cutoff) continue;
    auto res = engine_->close(current, "idle");
    log_->append(id, res.records);
    {
      std::lock_guard lock(e->mu);
      e->state = res.state;
    }
    ++closed;
  }
  return closed;
}

}  // namespace screenbot::dialogue
