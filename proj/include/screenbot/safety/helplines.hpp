#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "screenbot/core/language.hpp"

namespace screenbot::safety {

struct HelplineEntry {
  std::string country;  // upper-case locale code, e.g. "UK", "CN"; "*" for the fallback
  std::string name;
  std::string contact;
  std::string description;
  Language lang = Language::English;

  bool operator==(const HelplineEntry&) const = default;
};

nlohmann::json to_json(const HelplineEntry& entry);
nlohmann::json to_json(const std::vector<HelplineEntry>& entries);

// Upper-cases and maps aliases ("GB" -> "UK", "CHINA" -> "CN").
std::string canonical_country(std::string_view country);

class HelplineDirectory {
 public:
  // Array of {country, name, contact, description, lang}. Throws DataError
  // on a missing field, empty contact or unsupported language.
  static HelplineDirectory from_json(const nlohmann::json& doc);
  static HelplineDirectory load(const std::filesystem::path& path);

  // Entries for `country` in `lang`; if the country has none in `lang`, its
  // entries in any language; if the country is unknown, a single fallback
  // entry pointing at local emergency services. Never empty.
  std::vector<HelplineEntry> helplines_for(std::string_view country, Language lang) const;

  std::vector<std::string> countries() const;
  const std::vector<HelplineEntry>& entries() const noexcept { return entries_; }

  static HelplineEntry fallback(Language lang);

 private:
  std::vector<HelplineEntry> entries_;
};

}  // namespace screenbot::safety
