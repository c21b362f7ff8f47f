#include "screenbot/phq9/answer_parser.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "screenbot/core/text.hpp"

namespace screenbot::phq9 {

namespace {

// Words that may surround an indicator without changing its meaning.
const std::set<std::string, std::less<>> kEnglishFiller{
    "option", "answer", "choice", "letter", "number", "my",   "is",     "i",
    "i'd",    "i'll",   "would",  "say",    "pick",   "choose", "go",   "with",
    "it",     "it's",   "the",    "that",   "that's", "score", "please"};

const std::set<std::string, std::less<>> kMandarinFiller{"我选择", "我选", "选择", "选",
                                                          "答案是", "答案", "是", "我的答案是"};

int number_word(std::string_view tok) {
  if (tok == "zero") return 0;
  if (tok == "one") return 1;
  if (tok == "two") return 2;
  if (tok == "three") return 3;
  return -1;
}

bool ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z');
}

// Removes every whole-phrase occurrence of each anchor, recording its bracket.
void strip_anchors(std::string& work, Language lang, const Instrument& instrument,
                   std::set<int>& brackets) {
  std::vector<std::pair<std::string, int>> anchors;
  for (const auto& item : instrument.items()) {
    const auto& labels = item.option_labels.at(lang);
    for (int b = 0; b < kOptionCount; ++b) {
      anchors.emplace_back(normalize_answer(labels[static_cast<std::size_t>(b)]), b);
    }
  }
  std::sort(anchors.begin(), anchors.end(), [](const auto& a, const auto& b) {
    return a.first.size() != b.first.size() ? a.first.size() > b.first.size() : a < b;
  });
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

  for (const auto& [anchor, bracket] : anchors) {
    if (anchor.empty()) continue;
    std::size_t pos = 0;
    while ((pos = work.find(anchor, pos)) != std::string::npos) {
      const std::size_t end = pos + anchor.size();
      const bool left_ok = pos == 0 || !ascii_alnum(work[pos - 1]) || !ascii_alnum(anchor.front());
      const bool right_ok =
          end == work.size() || !ascii_alnum(work[end]) || !ascii_alnum(anchor.back());
      if (left_ok && right_ok) {
        brackets.insert(bracket);
        work.replace(pos, anchor.size(), std::string(anchor.size(), ' '));
      }
      pos = end;
    }
  }
}

struct Token {
  std::string text;
  bool cjk = false;
};

// ASCII word runs (letters, digits, inner '.' and '\''), CJK runs, and any
// other non-separator character as a token of its own.
std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  const auto cps = text::decode(s);
  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t c = cps[i].value;
    auto word_char = [](char32_t v) {
      return (v >= 'a' && v <= 'z') || (v >= '0' && v <= '9') || (v >= 'A' && v <= 'Z');
    };
    // A sign glued to a digit belongs to the number, so "-1" is not bracket 1.
    const bool signed_number = (c == '-' || c == '+' || c == U'−') && i + 1 < cps.size() &&
                               cps[i + 1].value >= '0' && cps[i + 1].value <= '9';
    if (word_char(c) || signed_number) {
      std::size_t j = signed_number ? i + 1 : i;
      while (j < cps.size()) {
        const char32_t v = cps[j].value;
        if (word_char(v)) {
          ++j;
        } else if ((v == '.' || v == '\'') && j + 1 < cps.size() && word_char(cps[j + 1].value) &&
                   j > i) {
          ++j;
        } else {
          break;
        }
      }
      const auto begin = cps[i].offset;
      const auto end = cps[j - 1].offset + cps[j - 1].length;
      out.push_back({std::string(s.substr(begin, end - begin)), false});
      i = j;
    } else if (text::is_cjk(c)) {
      std::size_t j = i;
      while (j < cps.size() && text::is_cjk(cps[j].value)) ++j;
      const auto begin = cps[i].offset;
      const auto end = cps[j - 1].offset + cps[j - 1].length;
      out.push_back({std::string(s.substr(begin, end - begin)), true});
      i = j;
    } else if (text::is_space(c) || text::is_punct(c)) {
      ++i;
    } else {
      out.push_back({std::string(s.substr(cps[i].offset, cps[i].length)), false});
      ++i;
    }
  }
  return out;
}

}  // namespace

std::string normalize_answer(std::string_view raw_text) {
  return text::fold_terminal_punct(raw_text);
}

AnswerParse parse_answer(std::string_view raw_text, Language lang, const Instrument& instrument) {
  const Ambiguous ambiguous{std::string(raw_text)};
  std::string work = normalize_answer(raw_text);
  if (work.empty()) return ambiguous;

  std::set<int> brackets;
  strip_anchors(work, lang, instrument, brackets);

  for (const auto& tok : tokenize(work)) {
    if (tok.cjk) {
      if (kMandarinFiller.count(tok.text)) continue;
      return ambiguous;
    }
    const std::string& t = tok.text;
    if (t.size() == 1 && t[0] >= '0' && t[0] <= '3') {
      brackets.insert(t[0] - '0');
    } else if (t.size() == 1 && t[0] >= 'a' && t[0] <= 'd') {
      brackets.insert(t[0] - 'a');
    } else if (const int n = number_word(t); n >= 0) {
      brackets.insert(n);
    } else if (kEnglishFiller.count(t)) {
      continue;
    } else {
      // Unrecognised words, other numbers ("4", "1.5") or symbols.
      return ambiguous;
    }
  }
  if (brackets.size() != 1) return ambiguous;
  return Categorical{ItemScore(*brackets.begin())};
}

}  // namespace screenbot::phq9
