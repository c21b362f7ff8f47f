#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "screenbot/phq9/instrument.hpp"
#include "screenbot/safety/safety_guard.hpp"

namespace testsupport {

inline std::filesystem::path data_dir() { return SCREENBOT_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return SCREENBOT_FIXTURE_DIR; }

inline const screenbot::phq9::Instrument& instrument() {
  static const auto inst = screenbot::phq9::Instrument::load(data_dir() / "phq9_items.json");
  return inst;
}

inline screenbot::safety::SafetyPaths safety_paths() {
  return {data_dir() / "crisis_lexicon.json", data_dir() / "helplines.json",
          data_dir() / "crisis_messages.json"};
}

inline const screenbot::safety::SafetyGuard& guard() {
  static const auto g = screenbot::safety::SafetyGuard::load(safety_paths());
  return g;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() /
             ("screenbot-" + tag + "-" + std::to_string(rng()));
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string random_word(std::mt19937_64& rng, std::size_t min_len = 2,
                               std::size_t max_len = 9) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> ch('a', 'z');
  std::string w(len(rng), 'a');
  for (auto& c : w) c = static_cast<char>(ch(rng));
  return w;
}

}  // namespace testsupport
