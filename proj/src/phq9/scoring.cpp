#include "screenbot/phq9/scoring.hpp"

#include <numeric>
#include <string>

#include "screenbot/core/errors.hpp"

namespace screenbot::phq9 {

ItemScore::ItemScore(int value) : value_(value) {
  if (value < 0 || value > 3) {
    throw DomainError("item score " + std::to_string(value) + " outside 0..3");
  }
}

BandRange band_range(SeverityBand band) noexcept {
  switch (band) {
    case SeverityBand::MinimalNone:
      return {0, 4};
    case SeverityBand::Mild:
      return {5, 9};
    case SeverityBand::Moderate:
      return {10, 14};
    case SeverityBand::ModeratelySevere:
      return {15, 19};
    case SeverityBand::Severe:
      return {20, 27};
  }
  return {0, 0};
}

SeverityBand classify_severity(int total) {
  if (total < 0 || total > kMaxTotal) {
    throw DomainError("PHQ-9 total " + std::to_string(total) + " outside 0..27");
  }
  if (total <= 4) return SeverityBand::MinimalNone;
  if (total <= 9) return SeverityBand::Mild;
  if (total <= 14) return SeverityBand::Moderate;
  if (total <= 19) return SeverityBand::ModeratelySevere;
  return SeverityBand::Severe;
}

std::string_view band_id(SeverityBand band) noexcept {
  switch (band) {
    case SeverityBand::MinimalNone:
      return "MinimalNone";
    case SeverityBand::Mild:
      return "Mild";
    case SeverityBand::Moderate:
      return "Moderate";
    case SeverityBand::ModeratelySevere:
      return "ModeratelySevere";
    case SeverityBand::Severe:
      return "Severe";
  }
  return "";
}

std::string_view band_label(SeverityBand band, Language lang) noexcept {
  const bool zh = lang == Language::Mandarin;
  switch (band) {
    case SeverityBand::MinimalNone:
      return zh ? "无或极轻微抑郁" : "Minimal/None";
    case SeverityBand::Mild:
      return zh ? "轻度抑郁" : "Mild";
    case SeverityBand::Moderate:
      return zh ? "中度抑郁" : "Moderate";
    case SeverityBand::ModeratelySevere:
      return zh ? "中重度抑郁" : "Moderately Severe";
    case SeverityBand::Severe:
      return zh ? "重度抑郁" : "Severe";
  }
  return "";
}

int score_total(std::span<const ItemScore> item_scores) {
  if (item_scores.size() != kItemCount) {
    throw IncompleteResultError("expected 9 item scores, got " +
                                std::to_string(item_scores.size()));
  }
  return std::accumulate(item_scores.begin(), item_scores.end(), 0,
                         [](int acc, ItemScore s) { return acc + s.value(); });
}

Phq9Result Phq9Result::from_scores(std::span<const ItemScore> item_scores) {
  const int total = score_total(item_scores);
  std::array<ItemScore, kItemCount> scores{ItemScore(0), ItemScore(0), ItemScore(0),
                                           ItemScore(0), ItemScore(0), ItemScore(0),
                                           ItemScore(0), ItemScore(0), ItemScore(0)};
  std::copy(item_scores.begin(), item_scores.end(), scores.begin());
  return Phq9Result(scores, total, classify_severity(total));
}

ItemScore Phq9Result::item(int index) const {
  if (index < 1 || index > kItemCount) {
    throw DomainError("item index " + std::to_string(index) + " outside 1..9");
  }
  return scores_[static_cast<std::size_t>(index - 1)];
}

}  // namespace screenbot::phq9
