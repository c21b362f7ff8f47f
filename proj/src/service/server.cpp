#include "screenbot/service/server.hpp"

#include <httplib.h>

#include <iostream>
#include <random>

#include "screenbot/core/errors.hpp"
#include "screenbot/core/hash.hpp"
#include "screenbot/phq9/summary.hpp"
#include "screenbot/service/wire.hpp"

namespace screenbot::service {

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

// Maps library errors to HTTP status codes.
int status_for(const std::exception& e) {
  if (dynamic_cast<const NotFoundError*>(&e)) return 404;
  if (dynamic_cast<const BusyError*>(&e)) return 409;
  if (dynamic_cast<const ClosedError*>(&e)) return 410;
  if (dynamic_cast<const IncompleteResultError*>(&e)) return 409;
  if (dynamic_cast<const UnsupportedLanguageError*>(&e)) return 422;
  return 500;
}

std::optional<nlohmann::json> parse_body(const httplib::Request& req, httplib::Response& res) {
  if (req.body.empty()) return nlohmann::json::object();
  auto j = nlohmann::json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    send_error(res, 400, "body must be a JSON object");
    return std::nullopt;
  }
  return j;
}

}  // namespace

std::string AudioShelf::put(const std::string& session_id, llm::AudioBlob blob) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu_);
  const std::string token = hex64(rng()) + hex64(++counter_);
  if (auto it = latest_.find(session_id); it != latest_.end()) by_token_.erase(it->second);
  latest_[session_id] = token;
  by_token_.emplace(token, std::make_pair(session_id, std::move(blob)));
  return token;
}

std::optional<llm::AudioBlob> AudioShelf::take(const std::string& token) {
  std::lock_guard lock(mu_);
  auto it = by_token_.find(token);
  if (it == by_token_.end()) return std::nullopt;
  auto blob = std::move(it->second.second);
  latest_.erase(it->second.first);
  by_token_.erase(it);
  return blob;
}

std::size_t AudioShelf::size() const {
  std::lock_guard lock(mu_);
  return by_token_.size();
}

ScreeningServer::ScreeningServer(Runtime runtime)
    : runtime_(std::move(runtime)), http_(std::make_unique<httplib::Server>()) {
  routes();
}

ScreeningServer::~ScreeningServer() {
  stop();
  if (maintenance_.joinable()) maintenance_.join();
}

int ScreeningServer::bind() {
  const auto& c = runtime_.config;
  if (c.port == 0) {
    port_ = http_->bind_to_any_port(c.bind_address);
  } else {
    port_ = http_->bind_to_port(c.bind_address, c.port) ? c.port : -1;
  }
  if (port_ <= 0) {
    throw ConfigError("cannot bind " + c.bind_address + ":" + std::to_string(c.port));
  }
  return port_;
}

void ScreeningServer::run() {
  if (port_ <= 0) bind();
  {
    std::lock_guard lock(stop_mu_);
    stopping_ = false;
  }
  maintenance_ = std::thread([this] { maintenance_loop(); });
  http_->listen_after_bind();
  // listen returns once stop() closed the socket and the worker pool drained.
  {
    std::lock_guard lock(stop_mu_);
    stopping_ = true;
  }
  stop_cv_.notify_all();
  if (maintenance_.joinable()) maintenance_.join();
}

void ScreeningServer::stop() {
  {
    std::lock_guard lock(stop_mu_);
    stopping_ = true;
  }
  stop_cv_.notify_all();
  if (http_) http_->stop();
}

void ScreeningServer::maintenance_loop() {
  std::unique_lock lock(stop_mu_);
  while (!stopping_) {
    stop_cv_.wait_for(lock, runtime_.config.maintenance_interval);
    if (stopping_) break;
    lock.unlock();
    try {
      if (runtime_.safety->reload_if_changed()) {
        std::cerr << "screenbot: reloaded crisis lexicon and helplines\n";
      }
    } catch (const std::exception& e) {
      std::cerr << "screenbot: safety reload failed, keeping previous data: " << e.what() << "\n";
    }
    try {
      if (const auto n = runtime_.sessions->close_idle(); n > 0) {
        std::cerr << "screenbot: closed " << n << " idle session(s)\n";
      }
    } catch (const std::exception& e) {
      std::cerr << "screenbot: idle sweep failed: " << e.what() << "\n";
    }
    lock.lock();
  }
}

void ScreeningServer::routes() {
  auto& srv = *http_;
  auto sessions = runtime_.sessions;

  srv.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                               std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      send_error(res, status_for(e), e.what());
    } catch (...) {
      send_error(res, 500, "internal error");
    }
  });

  srv.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });

  srv.Post("/sessions", [this, sessions](const httplib::Request& req, httplib::Response& res) {
    auto body = parse_body(req, res);
    if (!body) return;
    const auto lang_code =
        body->value("lang", std::string(language_code(runtime_.config.default_lang)));
    const auto lang = parse_language(lang_code);
    if (!lang) {
      send_error(res, 422, "unsupported language '" + lang_code + "'");
      return;
    }
    const auto country = body->value("country", runtime_.config.default_country);
    const auto state = sessions->open(*lang, country);
    send_json(res, 201,
              {{"session_id", state.session_id},
               {"lang", language_code(state.lang)},
               {"country", state.country},
               {"phase", dialogue::phase_tag(state.phase)},
               {"greeting", wire_turn(state.session_id, state.transcript.back())}});
  });

  srv.Get(R"(/sessions/([A-Za-z0-9_-]+))",
          [sessions](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, wire_session(sessions->snapshot(req.matches[1])));
          });

  srv.Get(R"(/sessions/([A-Za-z0-9_-]+)/result)",
          [sessions](const httplib::Request& req, httplib::Response& res) {
            const auto state = sessions->snapshot(req.matches[1]);
            if (!state.result) {
              send_json(res, 409,
                        {{"error", "screening incomplete"}, {"remaining", state.remaining_items()}});
              return;
            }
            send_json(res, 200, phq9::to_json(sessions->engine().summary(state)));
          });

  srv.Get(R"(/audio/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
    auto blob = audio_.take(req.matches[1]);
    if (!blob) {
      send_error(res, 404, "audio not available");
      return;
    }
    res.set_content(std::string(blob->bytes.begin(), blob->bytes.end()), blob->mime_type);
  });

  srv.Post(R"(/sessions/([A-Za-z0-9_-]+)/turns)", [this, sessions](const httplib::Request& req,
                                                                   httplib::Response& res) {
    auto body = parse_body(req, res);
    if (!body) return;
    if (!body->contains("text") || !(*body)["text"].is_string()) {
      send_error(res, 400, "missing text");
      return;
    }
    const std::string session_id = req.matches[1];
    // Claim the session before streaming so 404/409/410 arrive as plain
    // status codes rather than inside the event stream.
    auto lease = std::make_shared<std::optional<dialogue::TurnLease>>();
    lease->emplace(sessions->begin_turn(session_id));
    auto text = std::make_shared<std::string>((*body)["text"].get<std::string>());

    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "text/event-stream",
        [this, sessions, lease, text, session_id](size_t, httplib::DataSink& sink) {
          llm::CancelToken cancel;
          auto emit = [&](std::string_view event, const nlohmann::json& data) {
            if (cancel.cancelled()) return;
            const auto frame = sse_frame(event, data);
            if (!sink.write(frame.data(), frame.size())) cancel.cancel();
          };
          try {
            auto out = sessions->advance(
                **lease, *text, [&](std::string_view chunk) { emit("token", {{"text", chunk}}); },
                cancel);
            // Persisted; the client may send its next turn as soon as it
            // sees done.
            lease->reset();
            const auto& result = out.result;
            for (const auto& ev : result.events) emit("event", wire_event(ev, result.reply));
            nlohmann::json done{{"turn", wire_turn(session_id, result.records.back())},
                                {"reply", wire_reply(result.reply)},
                                {"latency", llm::to_json(result.records.back().latency.value_or(
                                                llm::TurnLatency{}))},
                                {"phase", dialogue::phase_tag(result.state.phase)},
                                {"audio_degraded", out.speech.degraded}};
            if (out.speech.audio) {
              done["audio_url"] = "/audio/" + audio_.put(session_id, std::move(*out.speech.audio));
            } else {
              done["audio_url"] = nullptr;
            }
            emit("done", done);
          } catch (const CancelledError&) {
            // Client went away mid-generation; nothing was persisted.
          } catch (const std::exception& e) {
            emit("error", {{"error", e.what()}, {"status", status_for(e)}});
          }
          lease->reset();
          sink.done();
          return true;
        },
        [lease](bool) mutable { lease.reset(); });
  });
}

}  // namespace screenbot::service
