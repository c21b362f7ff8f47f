#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "screenbot/core/language.hpp"
#include "screenbot/phq9/instrument.hpp"
#include "screenbot/phq9/scoring.hpp"

namespace screenbot::phq9 {

struct Categorical {
  ItemScore score;
  bool operator==(const Categorical&) const = default;
};

struct Ambiguous {
  std::string raw_text;  // verbatim user text
  bool operator==(const Ambiguous&) const = default;
};

using AnswerParse = std::variant<Categorical, Ambiguous>;

// Case-fold, trim and strip terminal punctuation. Idempotent.
std::string normalize_answer(std::string_view raw_text);

// Maps a reply to a bracket when it names exactly one: a letter A-D, a
// digit 0-3 (or its English number word), or one of the instrument's anchor
// phrases in `lang`, optionally wrapped in filler such as "my answer is" or
// "option". Anything else left in the text, or indicators for two different
// brackets, makes the reply Ambiguous.
AnswerParse parse_answer(std::string_view raw_text, Language lang, const Instrument& instrument);

}  // namespace screenbot::phq9
