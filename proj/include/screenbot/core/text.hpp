#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers shared by the answer parser, the crisis detector and the
// embedder. Only ASCII letters are case-folded; CJK text has no case.
namespace screenbot::text {

struct CodePoint {
  char32_t value;
  std::size_t offset;  // byte offset of the first byte
  std::size_t length;  // encoded length in bytes
};

// Decodes UTF-8; invalid bytes decode as U+FFFD of length 1.
std::vector<CodePoint> decode(std::string_view s);

void append_utf8(std::string& out, char32_t cp);

std::string ascii_lower(std::string_view s);

std::string_view trim(std::string_view s) noexcept;

bool is_space(char32_t cp) noexcept;

// ASCII punctuation/symbols plus the common CJK and general punctuation
// blocks (full-width forms, ideographic full stop, curly quotes, ...).
bool is_punct(char32_t cp) noexcept;

bool is_cjk(char32_t cp) noexcept;

// Lowercases, replaces punctuation with spaces, collapses whitespace runs to
// a single space and trims. Idempotent.
std::string fold_punct_and_space(std::string_view s);

// Lowercases, trims and removes trailing punctuation until stable.
// Idempotent.
std::string fold_terminal_punct(std::string_view s);

}  // namespace screenbot::text
