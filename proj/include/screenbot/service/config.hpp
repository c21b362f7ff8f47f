#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "screenbot/core/language.hpp"
#include "screenbot/llm/backend.hpp"
#include "screenbot/llm/speech.hpp"
#include "screenbot/rag/chunker.hpp"
#include "screenbot/rag/embedding.hpp"

namespace screenbot::service {

enum class BackendKind { Scripted, Remote };
enum class SpeechKind { Null, Remote };
enum class EmbedderKind { Hashing, Remote };
enum class PolicyKind { Token, Llm };

struct ServiceConfig {
  std::string bind_address = "127.0.0.1";
  int port = 8080;  // 0 picks a free port

  std::filesystem::path instrument_path;
  std::filesystem::path lexicon_path;
  std::filesystem::path helplines_path;
  std::filesystem::path crisis_messages_path;
  std::filesystem::path session_dir = "var/sessions";
  std::filesystem::path store_dir = "var/stores";  // <store>.jsonl snapshots

  EmbedderKind embedder = EmbedderKind::Hashing;
  std::size_t hashing_dim = 256;
  rag::RemoteEmbedderConfig remote_embedder;
  rag::ChunkingOptions chunking;

  BackendKind backend = BackendKind::Scripted;
  std::vector<std::string> scripted_replies{"I'm here and listening. Tell me more."};
  llm::ScriptedBackendOptions scripted{.cycle = true};
  llm::RemoteBackendConfig remote_backend;
  int max_in_flight = 8;

  SpeechKind speech = SpeechKind::Null;
  llm::RemoteSpeechConfig remote_speech;

  PolicyKind policy = PolicyKind::Token;
  std::string policy_token = "ready";

  std::size_t k_per_store = 3;
  std::size_t transcript_window = 12;
  Language default_lang = Language::English;
  std::string default_country = "UK";
  std::chrono::hours idle_limit{24};
  std::chrono::seconds maintenance_interval{5};

  // Snapshot file for a store name.
  std::filesystem::path store_snapshot(const std::string& store_name) const;

  // Throws ConfigError when a referenced file is missing or a value is out
  // of range.
  void validate() const;
};

// Relative paths are resolved against `base_dir`; unset data files default
// to `data_dir`. Credentials are never read from the file: only the name of
// the environment variable holding them.
ServiceConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                               const std::filesystem::path& data_dir);

// Parses and validates.
ServiceConfig load_config(const std::filesystem::path& path, const std::filesystem::path& data_dir);

// Defaults with data files from `data_dir`, without validation.
ServiceConfig default_config(const std::filesystem::path& data_dir);

}  // namespace screenbot::service
