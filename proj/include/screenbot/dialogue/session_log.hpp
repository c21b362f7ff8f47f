#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "screenbot/dialogue/session_state.hpp"

namespace screenbot::dialogue {

// Append-only JSONL, one TurnRecord per line, file <session_id>.jsonl.
// Appends are flushed and fsync'd before returning.
class SessionLog {
 public:
  explicit SessionLog(std::filesystem::path dir);

  void append(const std::string& session_id, std::span<const TurnRecord> records);
  bool exists(const std::string& session_id) const;
  // NotFoundError for an unknown id; IntegrityError for an unparsable line.
  std::vector<TurnRecord> read(const std::string& session_id) const;
  std::vector<std::string> session_ids() const;
  std::filesystem::path path_for(const std::string& session_id) const;
  const std::filesystem::path& dir() const noexcept { return dir_; }

  // Ids are restricted to [A-Za-z0-9_-]{1,64} so they are safe file names.
  static bool valid_id(std::string_view id) noexcept;

 private:
  std::filesystem::path dir_;
};

std::vector<TurnRecord> read_log_file(const std::filesystem::path& path);

// Rebuilds a session from its log. NotFoundError / IntegrityError.
SessionState resume(const SessionLog& log, const std::string& session_id);

}  // namespace screenbot::dialogue
