#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "screenbot/stats/config.hpp"
#include "screenbot/stats/descriptive.hpp"

namespace screenbot::stats {

// Shared shape of a test that may not be computable on the given data. When
// `applicable` is false the statistic is meaningless and `reason` says why.
struct Applicability {
  bool applicable = true;
  std::string reason;
};

struct WilcoxonResult : Applicability {
  double w_plus = 0;
  double w_minus = 0;
  std::size_t n_nonzero = 0;
  bool exact = false;
  double z = 0;  // normal approximation only
  double p = 1;
};

// Zero differences are dropped and |d| ties get average ranks.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs, const StatsConfig& cfg = {});
WilcoxonResult wilcoxon_signed_rank(std::span<const ScorePair> pairs, const StatsConfig& cfg = {});

struct TResult : Applicability {
  double t = 0;
  double df = 0;
  double p = 1;
};

TResult paired_t(std::span<const double> diffs);
TResult paired_t(std::span<const ScorePair> pairs);
// Student's pooled-variance independent-samples t.
TResult two_group_t(std::span<const double> a, std::span<const double> b);

struct CorrelationResult : Applicability {
  double rho = 0;
  double p = 1;
  std::size_t n = 0;
};

CorrelationResult spearman_rho(std::span<const double> x, std::span<const double> y);

struct IccResult : Applicability {
  double value = 0;
  double ci95_low = 0;
  double ci95_high = 0;
  double ms_rows = 0;
  double ms_error = 0;
};

// ICC(3,1), two raters. CI level follows cfg.alpha.
IccResult icc31(std::span<const ScorePair> pairs, const StatsConfig& cfg = {});
IccResult icc31(std::span<const double> first, std::span<const double> second,
                const StatsConfig& cfg = {});

struct AnovaResult : Applicability {
  double f = 0;
  double df_between = 0;
  double df_within = 0;
  double p = 1;
};

AnovaResult oneway_anova(const std::vector<std::vector<double>>& groups);

// Step-down adjustment, returned in input order.
std::vector<double> holm_bonferroni(std::span<const double> pvals);

}  // namespace screenbot::stats
