#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "screenbot/core/language.hpp"
#include "screenbot/phq9/instrument.hpp"
#include "screenbot/phq9/scoring.hpp"
#include "screenbot/safety/helplines.hpp"

namespace screenbot::phq9 {

struct SummaryItem {
  int index = 0;
  std::string text;
  int score = 0;
  std::string answer_label;  // anchor phrase for the recorded score
};

struct SummaryDocument {
  Language lang = Language::English;
  std::vector<SummaryItem> items;
  int total = 0;
  SeverityBand band = SeverityBand::MinimalNone;
  std::string band_label;
  std::string interpretation;
  std::vector<std::string> recommendations;
  // Present only when the self-harm item scored above zero.
  std::vector<safety::HelplineEntry> helplines;
  bool self_harm_flag = false;
};

SummaryDocument build_summary(const Phq9Result& result, Language lang,
                              const std::vector<safety::HelplineEntry>& helplines,
                              const Instrument& instrument);

// Overload taking a wire language code; throws UnsupportedLanguageError.
SummaryDocument build_summary(const Phq9Result& result, std::string_view lang_code,
                              const std::vector<safety::HelplineEntry>& helplines,
                              const Instrument& instrument);

nlohmann::json to_json(const SummaryDocument& doc);

// Plain-text rendering used as the bot's closing message.
std::string render_text(const SummaryDocument& doc);

}  // namespace screenbot::phq9
