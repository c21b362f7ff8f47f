#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "screenbot/core/language.hpp"

namespace screenbot::phq9 {

inline constexpr int kItemCount = 9;
inline constexpr int kOptionCount = 4;
inline constexpr int kMaxTotal = 27;
// Item asking about thoughts of self-harm.
inline constexpr int kSelfHarmItem = 9;

struct Phq9Item {
  int index = 0;
  std::map<Language, std::string> prompt_text;
  // Anchor labels for scores 0..3.
  std::map<Language, std::array<std::string, kOptionCount>> option_labels;
};

// The nine PHQ-9 items in both supported languages. Immutable once loaded.
class Instrument {
 public:
  // Array of {index, prompts: {en, zh}, options: {en: [4], zh: [4]}}.
  // Throws DataError unless there are exactly nine items with unique indices
  // 1..9 and every prompt/option is non-empty in every supported language.
  static Instrument from_json(const nlohmann::json& doc);
  static Instrument load(const std::filesystem::path& path);

  // Items ordered by index.
  const std::vector<Phq9Item>& items() const noexcept { return items_; }

  // 1-based; throws DomainError outside 1..9.
  const Phq9Item& item(int index) const;

  // FNV-1a over the canonical JSON dump, hex.
  const std::string& checksum() const noexcept { return checksum_; }

 private:
  std::vector<Phq9Item> items_;
  std::string checksum_;
};

}  // namespace screenbot::phq9
