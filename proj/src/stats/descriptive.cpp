#include "screenbot/stats/descriptive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "screenbot/core/errors.hpp"
#include "screenbot/phq9/scoring.hpp"

namespace screenbot::stats {

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw EmptyInputError("quantile of no values");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile probability outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return values[lo];
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double mean(std::span<const double> values) {
  if (values.empty()) throw EmptyInputError("mean of no values");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j share the mean of ranks i+1..j+1.
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

std::vector<double> differences(std::span<const ScorePair> pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.diff());
  return out;
}

Descriptives descriptives(std::span<const ScorePair> pairs) {
  if (pairs.empty()) throw EmptyInputError("descriptives need at least one pair");
  Descriptives d;
  d.n = pairs.size();
  std::vector<double> abs_d;
  const auto signed_d = differences(pairs);
  for (double v : signed_d) {
    abs_d.push_back(std::fabs(v));
    if (v == 0) ++d.identical_count;
  }
  d.abs_diff.median = median(abs_d);
  d.abs_diff.q1 = quantile(abs_d, 0.25);
  d.abs_diff.q3 = quantile(abs_d, 0.75);
  d.abs_diff.iqr = d.abs_diff.q3 - d.abs_diff.q1;
  d.abs_diff.mean = mean(abs_d);
  d.abs_diff.sd = sample_sd(abs_d);
  d.signed_diff.median = median(signed_d);
  d.signed_diff.mean = mean(signed_d);
  return d;
}

std::size_t category_shift(std::span<const ScorePair> pairs) {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const ScorePair& p) {
    return phq9::classify_severity(p.self_score) != phq9::classify_severity(p.bot_score);
  }));
}

}  // namespace screenbot::stats
