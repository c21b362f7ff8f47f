#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace screenbot::stats {

struct ScorePair {
  int self_score;
  int bot_score;

  // bot - self; positive when the chatbot scored higher.
  int diff() const noexcept { return bot_score - self_score; }
};

// Linear-interpolation quantile (R type 7) of unsorted data. p in [0, 1].
double quantile(std::vector<double> values, double p);
double median(std::vector<double> values);
double mean(std::span<const double> values);
// n - 1 denominator; 0 for a single value.
double sample_sd(std::span<const double> values);

// Tie-averaged ranks, 1-based, in input order.
std::vector<double> average_ranks(std::span<const double> values);

struct AbsDiffStats {
  double median = 0;
  double q1 = 0;
  double q3 = 0;
  double iqr = 0;
  double mean = 0;
  double sd = 0;
};

struct SignedDiffStats {
  double median = 0;
  double mean = 0;
};

struct Descriptives {
  std::size_t n = 0;
  std::size_t identical_count = 0;
  AbsDiffStats abs_diff;
  SignedDiffStats signed_diff;
};

// Throws EmptyInputError on no pairs.
Descriptives descriptives(std::span<const ScorePair> pairs);

// Pairs whose two totals fall in different severity bands.
std::size_t category_shift(std::span<const ScorePair> pairs);

std::vector<double> differences(std::span<const ScorePair> pairs);

}  // namespace screenbot::stats
