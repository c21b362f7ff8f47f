#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace screenbot {

enum class Language { English, Mandarin };

inline constexpr std::array<Language, 2> kSupportedLanguages{Language::English,
                                                             Language::Mandarin};

// ISO 639-1 code used on the wire and in data files ("en", "zh").
std::string_view language_code(Language lang) noexcept;

std::optional<Language> parse_language(std::string_view code) noexcept;

// Like parse_language but throws UnsupportedLanguageError.
Language require_language(std::string_view code);

}  // namespace screenbot
