#include "screenbot/safety/crisis_lexicon.hpp"

#include "screenbot/core/errors.hpp"
#include "screenbot/core/json_file.hpp"
#include "screenbot/core/text.hpp"

namespace screenbot::safety {

std::string normalize_for_match(std::string_view text) { return text::fold_punct_and_space(text); }

CrisisLexicon CrisisLexicon::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw DataError("crisis lexicon must be a JSON object");
  CrisisLexicon lex;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto lang = parse_language(it.key());
    if (!lang) throw DataError("crisis lexicon: unsupported language '" + it.key() + "'");
    if (!it.value().is_array()) throw DataError("crisis lexicon: '" + it.key() + "' is not a list");
    auto& list = lex.phrases_[*lang];
    for (const auto& p : it.value()) {
      if (!p.is_string()) throw DataError("crisis lexicon: non-string phrase");
      auto norm = normalize_for_match(p.get<std::string>());
      if (norm.empty()) throw DataError("crisis lexicon: phrase is empty after normalization");
      list.push_back(std::move(norm));
    }
  }
  for (Language lang : kSupportedLanguages) {
    auto it = lex.phrases_.find(lang);
    if (it == lex.phrases_.end() || it->second.empty()) {
      throw DataError("crisis lexicon: no phrases for '" + std::string(language_code(lang)) + "'");
    }
  }
  return lex;
}

CrisisLexicon CrisisLexicon::load(const std::filesystem::path& path) {
  return from_json(read_json_file(path));
}

const std::vector<std::string>& CrisisLexicon::phrases(Language lang) const {
  return phrases_.at(lang);
}

std::optional<MatchInfo> CrisisLexicon::detect(std::string_view text, Language lang) const {
  const std::string norm = normalize_for_match(text);
  if (norm.empty()) return std::nullopt;

  auto scan = [&](const std::vector<std::string>& list) -> std::optional<MatchInfo> {
    std::optional<MatchInfo> best;
    for (const auto& phrase : list) {
      const auto pos = norm.find(phrase);
      if (pos == std::string::npos) continue;
      if (!best || pos < best->begin || (pos == best->begin && phrase.size() > best->phrase.size())) {
        best = MatchInfo{phrase, pos, pos + phrase.size()};
      }
    }
    return best;
  };

  if (auto m = scan(phrases_.at(lang))) return m;
  for (const auto& [other, list] : phrases_) {
    if (other == lang) continue;
    if (auto m = scan(list)) return m;
  }
  return std::nullopt;
}

}  // namespace screenbot::safety
