#include "screenbot/safety/helplines.hpp"

#include <algorithm>
#include <set>

#include "screenbot/core/errors.hpp"
#include "screenbot/core/json_file.hpp"
#include "screenbot/core/text.hpp"

namespace screenbot::safety {

nlohmann::json to_json(const HelplineEntry& e) {
  return {{"country", e.country},
          {"name", e.name},
          {"contact", e.contact},
          {"description", e.description},
          {"lang", std::string(language_code(e.lang))}};
}

nlohmann::json to_json(const std::vector<HelplineEntry>& entries) {
  auto arr = nlohmann::json::array();
  for (const auto& e : entries) arr.push_back(to_json(e));
  return arr;
}

std::string canonical_country(std::string_view country) {
  std::string c(text::trim(country));
  std::transform(c.begin(), c.end(), c.begin(), [](unsigned char ch) {
    return static_cast<char>(ch >= 'a' && ch <= 'z' ? ch - 'a' + 'A' : ch);
  });
  if (c == "GB" || c == "GBR" || c == "UNITED KINGDOM") return "UK";
  if (c == "CHN" || c == "CHINA") return "CN";
  return c;
}

HelplineDirectory HelplineDirectory::from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw DataError("helpline directory must be a JSON array");
  HelplineDirectory dir;
  for (const auto& rec : doc) {
    auto field = [&](const char* key) {
      if (!rec.contains(key) || !rec.at(key).is_string()) {
        throw DataError(std::string("helpline record missing string field '") + key + "'");
      }
      return rec.at(key).get<std::string>();
    };
    HelplineEntry e;
    e.country = canonical_country(field("country"));
    e.name = field("name");
    e.contact = field("contact");
    e.description = field("description");
    e.lang = parse_language(field("lang")).value_or(Language::English);
    if (!parse_language(field("lang"))) {
      throw DataError("helpline record '" + e.name + "' has unsupported lang");
    }
    if (text::trim(e.contact).empty()) {
      throw DataError("helpline record '" + e.name + "' has empty contact");
    }
    if (e.country.empty()) throw DataError("helpline record '" + e.name + "' has empty country");
    dir.entries_.push_back(std::move(e));
  }
  return dir;
}

HelplineDirectory HelplineDirectory::load(const std::filesystem::path& path) {
  return from_json(read_json_file(path));
}

HelplineEntry HelplineDirectory::fallback(Language lang) {
  if (lang == Language::Mandarin) {
    return {"*", "当地紧急服务", "请拨打当地急救电话",
            "如果您有立即的危险，请立刻联系当地的紧急服务或前往最近的急诊室。", lang};
  }
  return {"*", "Local emergency services", "Call your local emergency number",
          "If you are in immediate danger, contact your local emergency services or go to the "
          "nearest emergency department.",
          lang};
}

std::vector<HelplineEntry> HelplineDirectory::helplines_for(std::string_view country,
                                                            Language lang) const {
  const std::string want = canonical_country(country);
  std::vector<HelplineEntry> in_lang;
  std::vector<HelplineEntry> any_lang;
  for (const auto& e : entries_) {
    if (e.country != want) continue;
    any_lang.push_back(e);
    if (e.lang == lang) in_lang.push_back(e);
  }
  if (!in_lang.empty()) return in_lang;
  if (!any_lang.empty()) return any_lang;
  return {fallback(lang)};
}

std::vector<std::string> HelplineDirectory::countries() const {
  std::set<std::string> s;
  for (const auto& e : entries_) s.insert(e.country);
  return {s.begin(), s.end()};
}

}  // namespace screenbot::safety
