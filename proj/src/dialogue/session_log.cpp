#include "screenbot/dialogue/session_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "screenbot/core/errors.hpp"

namespace screenbot::dialogue {

namespace fs = std::filesystem;

namespace {

void write_all(int fd, const std::string& data, const fs::path& path) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error("write " + path.string() + ": " + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
}

void fsync_dir(const fs::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

}  // namespace

SessionLog::SessionLog(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

bool SessionLog::valid_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  });
}

fs::path SessionLog::path_for(const std::string& session_id) const {
  if (!valid_id(session_id)) throw NotFoundError("invalid session id");
  return dir_ / (session_id + ".jsonl");
}

bool SessionLog::exists(const std::string& session_id) const {
  return valid_id(session_id) && fs::exists(path_for(session_id));
}

void SessionLog::append(const std::string& session_id, std::span<const TurnRecord> records) {
  const auto path = path_for(session_id);
  std::string data;
  for (const auto& r : records) data += to_json(r).dump() + "\n";
  const bool fresh = !fs::exists(path);
  const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw Error("open " + path.string() + ": " + std::strerror(errno));
  try {
    write_all(fd, data, path);
    if (::fsync(fd) != 0) throw Error("fsync " + path.string() + ": " + std::strerror(errno));
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
  if (fresh) fsync_dir(dir_);
}

std::vector<TurnRecord> read_log_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("no session log at " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();

  std::vector<TurnRecord> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < data.size()) {
    const auto nl = data.find('\n', pos);
    const bool terminated = nl != std::string::npos;
    const std::string line = data.substr(pos, terminated ? nl - pos : std::string::npos);
    pos = terminated ? nl + 1 : data.size();
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      // An unterminated last line is a write torn by a crash; it was never
      // acknowledged, so it is dropped.
      if (!terminated) break;
      throw IntegrityError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<TurnRecord> SessionLog::read(const std::string& session_id) const {
  if (!exists(session_id)) throw NotFoundError("unknown session " + session_id);
  return read_log_file(path_for(session_id));
}

std::vector<std::string> SessionLog::session_ids() const {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.path().extension() == ".jsonl") ids.push_back(entry.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

SessionState resume(const SessionLog& log, const std::string& session_id) {
  const auto records = log.read(session_id);
  return replay(session_id, records);
}

}  // namespace screenbot::dialogue
