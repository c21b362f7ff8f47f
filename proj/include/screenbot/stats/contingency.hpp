#pragma once

#include <array>
#include <string_view>

#include "screenbot/stats/config.hpp"
#include "screenbot/stats/inference.hpp"

namespace screenbot::stats {

// [[a, b], [c, d]]: rows are factor levels, columns endpoint yes / no.
struct Table2x2 {
  std::array<std::array<long, 2>, 2> n{};

  long a() const noexcept { return n[0][0]; }
  long b() const noexcept { return n[0][1]; }
  long c() const noexcept { return n[1][0]; }
  long d() const noexcept { return n[1][1]; }
  long total() const noexcept { return a() + b() + c() + d(); }
  double expected(int row, int col) const noexcept;
  double min_expected() const noexcept;
  bool has_zero_margin() const noexcept;
};

struct ChiSquareResult : Applicability {
  double chi2 = 0;
  double p = 1;
};

struct FisherResult : Applicability {
  double odds_ratio = 1;
  double ci95_low = 0;
  double ci95_high = 0;
  bool haldane = false;
  double p = 1;
};

// Both throw DataError on negative counts.
ChiSquareResult chi2_yates(const Table2x2& t);
FisherResult fisher_exact(const Table2x2& t, const StatsConfig& cfg = {});

struct OddsRatio {
  double value = 1;
  double ci95_low = 0;
  double ci95_high = 0;
  bool haldane = false;
};

// Woolf logit interval; +0.5 to every cell when any cell is zero.
OddsRatio odds_ratio(const Table2x2& t, const StatsConfig& cfg = {});

enum class ContingencyMethod { Chi2Yates, Fisher };

std::string_view method_name(ContingencyMethod m) noexcept;

struct ContingencyResult : Applicability {
  Table2x2 table;
  ContingencyMethod method = ContingencyMethod::Chi2Yates;
  double statistic = 0;  // chi2, or the observed-table probability for Fisher
  OddsRatio odds;
  double p = 1;
  double p_adjusted = 1;
};

// Fisher when any expected cell is below 5, Yates chi-square otherwise.
ContingencyResult contingency_test(const Table2x2& t, const StatsConfig& cfg = {});

}  // namespace screenbot::stats
