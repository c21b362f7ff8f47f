#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "screenbot/core/language.hpp"

namespace screenbot::safety {

struct MatchInfo {
  std::string phrase;
  // Byte span of the match inside the normalized text.
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const MatchInfo&) const = default;
};

// Case-fold, punctuation to space, whitespace collapse. Idempotent.
std::string normalize_for_match(std::string_view text);

// Trigger phrases per language, stored pre-normalized.
class CrisisLexicon {
 public:
  // {"en": [...], "zh": [...]}; every supported language must be present and
  // non-empty. Throws DataError.
  static CrisisLexicon from_json(const nlohmann::json& doc);
  static CrisisLexicon load(const std::filesystem::path& path);

  const std::vector<std::string>& phrases(Language lang) const;

  // Earliest match in the normalized text; on equal positions the longer
  // phrase wins. Phrases of `lang` are tried first, then the other
  // languages, so a Mandarin session typing English is still covered.
  std::optional<MatchInfo> detect(std::string_view text, Language lang) const;

 private:
  std::map<Language, std::vector<std::string>> phrases_;
};

}  // namespace screenbot::safety
