#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "screenbot/stats/descriptive.hpp"

namespace screenbot::stats {

struct Demographics {
  std::string country;
  std::string age_group;
  std::string gender;
  std::string ethnicity;
  std::string education;
  std::string employment;
  std::optional<bool> mh_experience;
  std::optional<bool> chatbot_experience;
};

struct PairedRecord {
  std::string participant_id;
  int self_score = 0;
  int bot_score = 0;
  Demographics demo;
  // q17..q20, 0-10 when answered.
  std::array<std::optional<int>, 4> ratings{};
  // Binary endpoints for contingency tables.
  std::optional<bool> trust;
  std::optional<bool> prefer;
  std::optional<bool> recommend;

  ScorePair pair() const noexcept { return {self_score, bot_score}; }
};

// Reads the pairs CSV. Requires participant_id, self_score and bot_score in the
// header; every other known column is optional and may appear in any order.
// Throws DataError naming the line for out-of-range or malformed values.
std::vector<PairedRecord> read_pairs_csv(std::istream& in);
std::vector<PairedRecord> load_pairs_csv(const std::filesystem::path& path);

std::vector<ScorePair> score_pairs(const std::vector<PairedRecord>& records);

// "q17".."q20" -> 0..3; throws DataError otherwise.
int rating_index(std::string_view name);

enum class DichotomyRule { Age, Ethnicity, Education };

// First label is the `true` level.
std::pair<std::string_view, std::string_view> dichotomy_labels(DichotomyRule rule) noexcept;

// Empty optional when the record has no usable value for the rule.
std::optional<bool> dichotomise(const PairedRecord& record, DichotomyRule rule);

// Binary view of a record for contingency factors and endpoints: the three
// dichotomy rules, mh_experience, chatbot_experience, trust, prefer, recommend.
// Throws DataError for unknown names.
std::optional<bool> binary_field(const PairedRecord& record, std::string_view name);
std::pair<std::string, std::string> binary_labels(std::string_view name);

// Categorical grouping key for group comparisons; empty when unanswered.
std::string category_field(const PairedRecord& record, std::string_view name);

}  // namespace screenbot::stats
