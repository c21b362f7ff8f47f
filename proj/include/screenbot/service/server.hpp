#pragma once

#include <atomic>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "screenbot/service/runtime.hpp"

namespace httplib {
class Server;
}

namespace screenbot::service {

// One-time audio handles. Only the latest blob of each session is kept, and
// a handle is consumed by the first successful fetch.
class AudioShelf {
 public:
  // Returns the opaque token.
  std::string put(const std::string& session_id, llm::AudioBlob blob);
  std::optional<llm::AudioBlob> take(const std::string& token);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::pair<std::string, llm::AudioBlob>> by_token_;
  std::map<std::string, std::string> latest_;  // session -> token
  std::uint64_t counter_ = 0;
};

// HTTP front door:
//   POST /sessions                 {lang, country} -> 201 {session_id, ...}
//   POST /sessions/{id}/turns      {text} -> text/event-stream of token, event, done
//   GET  /sessions/{id}            transcript and state hash
//   GET  /sessions/{id}/result     summary, or 409 {remaining}
//   GET  /audio/{token}            one-time audio fetch
//   GET  /health                   "ok"
class ScreeningServer {
 public:
  explicit ScreeningServer(Runtime runtime);
  ~ScreeningServer();

  ScreeningServer(const ScreeningServer&) = delete;
  ScreeningServer& operator=(const ScreeningServer&) = delete;

  // Binds the configured address; returns the actual port.
  int bind();
  // Serves until stop(); in-flight turns finish before it returns.
  void run();
  void stop();

  Runtime& runtime() noexcept { return runtime_; }
  int port() const noexcept { return port_; }

 private:
  void routes();
  void maintenance_loop();

  Runtime runtime_;
  std::unique_ptr<httplib::Server> http_;
  AudioShelf audio_;
  int port_ = 0;
  std::mutex stop_mu_;
  std::condition_variable stop_cv_;
  bool stopping_ = false;
  std::thread maintenance_;
};

}  // namespace screenbot::service
