#pragma once

#include <array>
#include <compare>
#include <span>
#include <string_view>

#include "screenbot/core/language.hpp"
#include "screenbot/phq9/instrument.hpp"

namespace screenbot::phq9 {

// One item's bracket score, 0..3 (A..D).
class ItemScore {
 public:
  // Throws DomainError outside 0..3.
  explicit ItemScore(int value);

  int value() const noexcept { return value_; }

  auto operator<=>(const ItemScore&) const = default;

 private:
  int value_;
};

enum class SeverityBand { MinimalNone, Mild, Moderate, ModeratelySevere, Severe };

inline constexpr std::array<SeverityBand, 5> kSeverityBands{
    SeverityBand::MinimalNone, SeverityBand::Mild, SeverityBand::Moderate,
    SeverityBand::ModeratelySevere, SeverityBand::Severe};

struct BandRange {
  int low;
  int high;  // inclusive
};

BandRange band_range(SeverityBand band) noexcept;

// Throws DomainError outside 0..27.
SeverityBand classify_severity(int total);

// Stable identifier used on the wire ("MinimalNone", "Mild", ...).
std::string_view band_id(SeverityBand band) noexcept;
std::string_view band_label(SeverityBand band, Language lang) noexcept;

// Throws IncompleteResultError unless exactly nine scores are given.
int score_total(std::span<const ItemScore> item_scores);

class Phq9Result {
 public:
  // Throws IncompleteResultError unless exactly nine scores are given.
  static Phq9Result from_scores(std::span<const ItemScore> item_scores);

  const std::array<ItemScore, kItemCount>& item_scores() const noexcept { return scores_; }
  // 1-based.
  ItemScore item(int index) const;
  int total() const noexcept { return total_; }
  SeverityBand severity() const noexcept { return severity_; }

  bool operator==(const Phq9Result&) const = default;

 private:
  Phq9Result(const std::array<ItemScore, kItemCount>& scores, int total, SeverityBand band)
      : scores_(scores), total_(total), severity_(band) {}

  std::array<ItemScore, kItemCount> scores_;
  int total_;
  SeverityBand severity_;
};

}  // namespace screenbot::phq9
