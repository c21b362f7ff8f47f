#include "screenbot/service/config.hpp"

#include "screenbot/core/errors.hpp"
#include "screenbot/core/json_file.hpp"

namespace screenbot::service {

namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

// Credentials live in the environment only; a config that tries to carry
// one is rejected rather than silently ignored.
void reject_secrets(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) return;
  for (const auto& [key, value] : j.items()) {
    if (key == "api_key" || key == "apiKey" || key == "token_value" || key == "secret") {
      throw ConfigError(where + key + ": credentials must come from an environment variable");
    }
    reject_secrets(value, where + key + ".");
  }
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void read_ms(const nlohmann::json& j, const char* key, std::chrono::milliseconds& out) {
  if (j.contains(key)) out = std::chrono::milliseconds(j.at(key).get<long long>());
}

}  // namespace

fs::path ServiceConfig::store_snapshot(const std::string& store_name) const {
  return store_dir / (store_name + ".jsonl");
}

void ServiceConfig::validate() const {
  if (port < 0 || port > 65535) throw ConfigError("port out of range: " + std::to_string(port));
  for (const auto& [label, path] :
       {std::pair{"instrument", instrument_path}, std::pair{"lexicon", lexicon_path},
        std::pair{"helplines", helplines_path}, std::pair{"crisis_messages", crisis_messages_path}}) {
    if (path.empty() || !fs::is_regular_file(path)) {
      throw ConfigError(std::string(label) + " file not found: " + path.string());
    }
  }
  if (k_per_store == 0) throw ConfigError("k_per_store must be at least 1");
  if (max_in_flight < 1) throw ConfigError("max_in_flight must be at least 1");
  if (hashing_dim == 0) throw ConfigError("embedder dim must be at least 1");
  if (backend == BackendKind::Scripted && scripted_replies.empty()) {
    throw ConfigError("scripted backend needs at least one reply");
  }
  if (idle_limit.count() <= 0) throw ConfigError("idle_hours must be positive");
}

ServiceConfig default_config(const fs::path& data_dir) {
  ServiceConfig c;
  c.instrument_path = data_dir / "phq9_items.json";
  c.lexicon_path = data_dir / "crisis_lexicon.json";
  c.helplines_path = data_dir / "helplines.json";
  c.crisis_messages_path = data_dir / "crisis_messages.json";
  return c;
}

ServiceConfig config_from_json(const nlohmann::json& j, const fs::path& base_dir,
                               const fs::path& data_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_secrets(j, "");
  ServiceConfig c = default_config(data_dir);
  try {
    read(j, "bind", c.bind_address);
    read(j, "port", c.port);
    if (j.contains("data")) {
      const auto& d = j.at("data");
      if (d.contains("instrument")) c.instrument_path = resolve(base_dir, d.at("instrument"));
      if (d.contains("lexicon")) c.lexicon_path = resolve(base_dir, d.at("lexicon"));
      if (d.contains("helplines")) c.helplines_path = resolve(base_dir, d.at("helplines"));
      if (d.contains("crisis_messages")) {
        c.crisis_messages_path = resolve(base_dir, d.at("crisis_messages"));
      }
    }
    c.session_dir = resolve(base_dir, j.value("session_dir", c.session_dir.string()));
    c.store_dir = resolve(base_dir, j.value("store_dir", c.store_dir.string()));

    if (j.contains("embedder")) {
      const auto& e = j.at("embedder");
      const auto kind = e.value("kind", std::string("hashing"));
      if (kind == "hashing") {
        c.embedder = EmbedderKind::Hashing;
        read(e, "dim", c.hashing_dim);
      } else if (kind == "remote") {
        c.embedder = EmbedderKind::Remote;
        auto& r = c.remote_embedder;
        read(e, "base_url", r.base_url);
        read(e, "path", r.path);
        read(e, "model", r.model);
        read(e, "api_key_env", r.api_key_env);
        read(e, "dim", r.dim);
        read(e, "max_attempts", r.max_attempts);
        read_ms(e, "timeout_ms", r.timeout);
      } else {
        throw ConfigError("unknown embedder kind '" + kind + "'");
      }
    }
    if (j.contains("chunking")) {
      read(j.at("chunking"), "chunk_tokens", c.chunking.chunk_tokens);
      read(j.at("chunking"), "overlap_ratio", c.chunking.overlap_ratio);
    }

    if (j.contains("backend")) {
      const auto& b = j.at("backend");
      const auto kind = b.value("kind", std::string("scripted"));
      if (kind == "scripted") {
        c.backend = BackendKind::Scripted;
        read(b, "replies", c.scripted_replies);
        read(b, "cycle", c.scripted.cycle);
        read(b, "chunk_codepoints", c.scripted.chunk_codepoints);
        read_ms(b, "delay_ms", c.scripted.delay);
      } else if (kind == "remote") {
        c.backend = BackendKind::Remote;
        auto& r = c.remote_backend;
        read(b, "base_url", r.base_url);
        read(b, "path", r.path);
        read(b, "model", r.model);
        read(b, "api_key_env", r.api_key_env);
        read(b, "temperature", r.temperature);
        read(b, "max_attempts", r.max_attempts);
        read_ms(b, "timeout_ms", r.timeout);
      } else {
        throw ConfigError("unknown backend kind '" + kind + "'");
      }
    }
    read(j, "max_in_flight", c.max_in_flight);

    if (j.contains("tts")) {
      const auto& t = j.at("tts");
      const auto kind = t.value("kind", std::string("null"));
      if (kind == "null") {
        c.speech = SpeechKind::Null;
      } else if (kind == "remote") {
        c.speech = SpeechKind::Remote;
        auto& r = c.remote_speech;
        read(t, "base_url", r.base_url);
        read(t, "path", r.path);
        read(t, "model", r.model);
        read(t, "voice", r.voice);
        read(t, "api_key_env", r.api_key_env);
        read_ms(t, "timeout_ms", r.timeout);
      } else {
        throw ConfigError("unknown tts kind '" + kind + "'");
      }
    }

    if (j.contains("transition_policy")) {
      const auto& p = j.at("transition_policy");
      const auto kind = p.value("kind", std::string("token"));
      if (kind == "token") {
        c.policy = PolicyKind::Token;
        read(p, "token", c.policy_token);
      } else if (kind == "llm") {
        c.policy = PolicyKind::Llm;
      } else {
        throw ConfigError("unknown transition_policy kind '" + kind + "'");
      }
    }

    read(j, "k_per_store", c.k_per_store);
    read(j, "transcript_window", c.transcript_window);
    if (j.contains("locale")) {
      const auto& l = j.at("locale");
      if (l.contains("lang")) {
        try {
          c.default_lang = require_language(l.at("lang").get<std::string>());
        } catch (const UnsupportedLanguageError& e) {
          throw ConfigError(e.what());
        }
      }
      read(l, "country", c.default_country);
    }
    if (j.contains("idle_hours")) c.idle_limit = std::chrono::hours(j.at("idle_hours").get<int>());
    if (j.contains("maintenance_interval_s")) {
      c.maintenance_interval = std::chrono::seconds(j.at("maintenance_interval_s").get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

ServiceConfig load_config(const fs::path& path, const fs::path& data_dir) {
  nlohmann::json j;
  try {
    j = read_json_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  auto c = config_from_json(j, fs::absolute(path).parent_path(), data_dir);
  c.validate();
  return c;
}

}  // namespace screenbot::service
