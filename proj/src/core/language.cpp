#include "screenbot/core/language.hpp"

#include <string>

#include "screenbot/core/errors.hpp"

namespace screenbot {

std::string_view language_code(Language lang) noexcept {
  switch (lang) {
    case Language::English:
      return "en";
    case Language::Mandarin:
      return "zh";
  }
  return "en";
}

std::optional<Language> parse_language(std::string_view code) noexcept {
  if (code == "en") return Language::English;
  if (code == "zh") return Language::Mandarin;
  return std::nullopt;
}

Language require_language(std::string_view code) {
  if (auto lang = parse_language(code)) return *lang;
  throw UnsupportedLanguageError("unsupported language: '" + std::string(code) + "'");
}

}  // namespace screenbot
