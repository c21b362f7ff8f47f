#include "screenbot/safety/safety_guard.hpp"

#include "screenbot/core/errors.hpp"
#include "screenbot/core/json_file.hpp"

namespace screenbot::safety {

SafetyGuard::SafetyGuard(CrisisLexicon lexicon, HelplineDirectory directory,
                         std::map<Language, CrisisMessages> messages)
    : lexicon_(std::move(lexicon)), directory_(std::move(directory)), messages_(std::move(messages)) {
  for (Language lang : kSupportedLanguages) {
    if (!messages_.count(lang)) {
      throw DataError("crisis messages missing language '" + std::string(language_code(lang)) + "'");
    }
  }
}

SafetyGuard SafetyGuard::load(const SafetyPaths& paths) {
  return SafetyGuard(CrisisLexicon::load(paths.lexicon), HelplineDirectory::load(paths.helplines),
                     load_crisis_messages(paths.messages));
}

const CrisisMessages& SafetyGuard::messages(Language lang) const { return messages_.at(lang); }

std::map<Language, CrisisMessages> load_crisis_messages(const std::filesystem::path& path) {
  const auto doc = read_json_file(path);
  if (!doc.is_object()) throw DataError(path.string() + ": expected an object keyed by language");
  std::map<Language, CrisisMessages> out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto lang = parse_language(it.key());
    if (!lang) throw DataError(path.string() + ": unsupported language '" + it.key() + "'");
    const auto& v = it.value();
    if (!v.contains("supportive") || !v.contains("resume_choice")) {
      throw DataError(path.string() + ": '" + it.key() + "' needs supportive and resume_choice");
    }
    out[*lang] = {v.at("supportive").get<std::string>(), v.at("resume_choice").get<std::string>()};
  }
  return out;
}

ReloadableSafetyGuard::ReloadableSafetyGuard(SafetyPaths paths)
    : paths_(std::move(paths)),
      guard_(std::make_shared<const SafetyGuard>(SafetyGuard::load(paths_))),
      stamps_(read_stamps()) {}

std::shared_ptr<const SafetyGuard> ReloadableSafetyGuard::current() const {
  std::lock_guard lock(mu_);
  return guard_;
}

std::vector<std::filesystem::file_time_type> ReloadableSafetyGuard::read_stamps() const {
  return {std::filesystem::last_write_time(paths_.lexicon),
          std::filesystem::last_write_time(paths_.helplines),
          std::filesystem::last_write_time(paths_.messages)};
}

void ReloadableSafetyGuard::reload() {
  auto stamps = read_stamps();
  auto fresh = std::make_shared<const SafetyGuard>(SafetyGuard::load(paths_));
  std::lock_guard lock(mu_);
  guard_ = std::move(fresh);
  stamps_ = std::move(stamps);
}

bool ReloadableSafetyGuard::reload_if_changed() {
  {
    std::lock_guard lock(mu_);
    if (read_stamps() == stamps_) return false;
  }
  reload();
  return true;
}

}  // namespace screenbot::safety
