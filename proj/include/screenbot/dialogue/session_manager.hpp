#pragma once

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "screenbot/dialogue/engine.hpp"
#include "screenbot/dialogue/session_log.hpp"
#include "screenbot/llm/speech.hpp"

namespace screenbot::dialogue {

struct TurnOutcome {
  AdvanceResult result;
  llm::SpeechOutcome speech;
};

class SessionManager;

// Exclusive right to run one turn on a session; releases on destruction.
class TurnLease {
 public:
  TurnLease(TurnLease&& other) noexcept;
  TurnLease& operator=(TurnLease&&) = delete;
  TurnLease(const TurnLease&) = delete;
  ~TurnLease();

  const std::string& session_id() const noexcept { return session_id_; }

 private:
  friend class SessionManager;
  struct Slot;
  TurnLease(std::string session_id, std::shared_ptr<Slot> slot);

  std::string session_id_;
  std::shared_ptr<Slot> slot_;
};

// Owns live sessions: one advance at a time per session (BusyError
// otherwise), persistence before returning, speech synthesis and latency
// stamping. Sessions missing from memory are resumed from the log.
class SessionManager {
 public:
  SessionManager(std::shared_ptr<const DialogueEngine> engine, std::shared_ptr<SessionLog> log,
                 std::shared_ptr<llm::SpeechSynthesizer> speech, std::shared_ptr<Clock> clock,
                 std::chrono::hours idle_limit = std::chrono::hours(24));

  // Returns the state after the greeting has been persisted.
  SessionState open(Language lang, std::string country);

  // Claims the session for one turn: NotFoundError, BusyError, ClosedError.
  TurnLease begin_turn(const std::string& session_id);

  TurnOutcome advance(TurnLease& lease, std::string_view input, const llm::ChunkSink& sink = {},
                      const llm::CancelToken& cancel = {});

  // begin_turn + advance.
  TurnOutcome advance(const std::string& session_id, std::string_view input,
                      const llm::ChunkSink& sink = {}, const llm::CancelToken& cancel = {});

  // Copy of the current state; NotFoundError.
  SessionState snapshot(const std::string& session_id);

  // Closes open sessions whose last record is older than the idle limit.
  // Busy sessions are skipped. Returns the number closed.
  std::size_t close_idle();

  std::size_t in_flight() const noexcept { return in_flight_.load(); }
  const DialogueEngine& engine() const noexcept { return *engine_; }

 private:
  struct Entry {
    std::mutex mu;
    SessionState state;
    std::atomic<bool> busy{false};
  };
  friend struct TurnLease::Slot;

  std::shared_ptr<Entry> entry(const std::string& session_id);
  std::string new_id();

  std::shared_ptr<const DialogueEngine> engine_;
  std::shared_ptr<SessionLog> log_;
  std::shared_ptr<llm::SpeechSynthesizer> speech_;
  std::shared_ptr<Clock> clock_;
  std::chrono::hours idle_limit_;
  std::mutex map_mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::atomic<std::size_t> in_flight_{0};
};

}  // namespace screenbot::dialogue
