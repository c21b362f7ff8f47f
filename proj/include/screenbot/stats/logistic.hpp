#pragma once

#include <span>

#include "screenbot/stats/config.hpp"
#include "screenbot/stats/inference.hpp"

namespace screenbot::stats {

struct LogisticResult : Applicability {
  bool separation = false;
  double intercept = 0;
  double slope = 0;
  double se_slope = 0;
  double or_per_unit = 1;
  double ci95_low = 0;
  double ci95_high = 0;
  double p = 1;
  double log_likelihood = 0;
  int iterations = 0;
};

// logit P(outcome) = intercept + slope * predictor, fitted by Newton-Raphson.
// Outcomes must be 0/1 (DataError otherwise).
LogisticResult logistic_trend(std::span<const int> outcome, std::span<const double> predictor,
                              const StatsConfig& cfg = {});

}  // namespace screenbot::stats
