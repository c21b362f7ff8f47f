#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "screenbot/safety/crisis_lexicon.hpp"
#include "screenbot/safety/helplines.hpp"

namespace screenbot::safety {

// Pre-scripted texts shown when the interlock fires.
struct CrisisMessages {
  std::string supportive;
  std::string resume_choice;
};

struct SafetyPaths {
  std::filesystem::path lexicon;
  std::filesystem::path helplines;
  std::filesystem::path messages;
};

// Immutable bundle of lexicon, helpline directory and message templates.
class SafetyGuard {
 public:
  SafetyGuard(CrisisLexicon lexicon, HelplineDirectory directory,
              std::map<Language, CrisisMessages> messages);

  static SafetyGuard load(const SafetyPaths& paths);

  std::optional<MatchInfo> detect_crisis(std::string_view text, Language lang) const {
    return lexicon_.detect(text, lang);
  }

  std::vector<HelplineEntry> helplines_for(std::string_view country, Language lang) const {
    return directory_.helplines_for(country, lang);
  }

  const CrisisMessages& messages(Language lang) const;
  const CrisisLexicon& lexicon() const noexcept { return lexicon_; }
  const HelplineDirectory& directory() const noexcept { return directory_; }

 private:
  CrisisLexicon lexicon_;
  HelplineDirectory directory_;
  std::map<Language, CrisisMessages> messages_;
};

std::map<Language, CrisisMessages> load_crisis_messages(const std::filesystem::path& path);

// Holds the current guard and swaps it atomically on reload; readers keep
// the snapshot they took for the duration of a turn.
class ReloadableSafetyGuard {
 public:
  explicit ReloadableSafetyGuard(SafetyPaths paths);

  std::shared_ptr<const SafetyGuard> current() const;

  // Reloads when any file's mtime changed. Returns true if swapped. A file
  // that fails to parse leaves the previous guard in place and rethrows.
  bool reload_if_changed();
  void reload();

 private:
  SafetyPaths paths_;
  mutable std::mutex mu_;
  std::shared_ptr<const SafetyGuard> guard_;
  std::vector<std::filesystem::file_time_type> stamps_;

  std::vector<std::filesystem::file_time_type> read_stamps() const;
};

}  // namespace screenbot::safety
