#include "screenbot/stats/contingency.hpp"

#include <algorithm>
#include <cmath>

#include "distributions.hpp"
#include "screenbot/core/errors.hpp"

namespace screenbot::stats {

namespace {

void check_counts(const Table2x2& t) {
  for (const auto& row : t.n) {
    for (long v : row) {
      if (v < 0) throw DataError("contingency counts must be non-negative");
    }
  }
}

double log_choose(long n, long k) {
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

// Hypergeometric tables closer than this (relative) to the observed
// probability count as ties; guards against lgamma rounding.
constexpr double kTieTolerance = 1e-7;

}  // namespace

double Table2x2::expected(int row, int col) const noexcept {
  const double r = static_cast<double>(n[row][0] + n[row][1]);
  const double c = static_cast<double>(n[0][col] + n[1][col]);
  return r * c / static_cast<double>(total());
}

double Table2x2::min_expected() const noexcept {
  double m = expected(0, 0);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m = std::min(m, expected(i, j));
  }
  return m;
}

bool Table2x2::has_zero_margin() const noexcept {
  return a() + b() == 0 || c() + d() == 0 || a() + c() == 0 || b() + d() == 0;
}

ChiSquareResult chi2_yates(const Table2x2& t) {
  check_counts(t);
  ChiSquareResult r;
  if (t.has_zero_margin()) {
    r.applicable = false;
    r.reason = "a row or column total is zero";
    return r;
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double e = t.expected(i, j);
      const double dev = std::fabs(static_cast<double>(t.n[i][j]) - e);
      const double adj = dev - std::min(dev, 0.5);
      r.chi2 += adj * adj / e;
    }
  }
  r.p = dist::chi2_sf(r.chi2, 1.0);
  return r;
}

OddsRatio odds_ratio(const Table2x2& t, const StatsConfig& cfg) {
  check_counts(t);
  OddsRatio o;
  double a = t.a(), b = t.b(), c = t.c(), d = t.d();
  if (a == 0 || b == 0 || c == 0 || d == 0) {
    o.haldane = true;
    a += 0.5;
    b += 0.5;
    c += 0.5;
    d += 0.5;
  }
  const double log_or = std::log(a * d / (b * c));
  const double se = std::sqrt(1 / a + 1 / b + 1 / c + 1 / d);
  const double z = cfg.z_critical();
  o.value = std::exp(log_or);
  o.ci95_low = std::exp(log_or - z * se);
  o.ci95_high = std::exp(log_or + z * se);
  return o;
}

FisherResult fisher_exact(const Table2x2& t, const StatsConfig& cfg) {
  check_counts(t);
  FisherResult r;
  if (t.has_zero_margin()) {
    r.applicable = false;
    r.reason = "a row or column total is zero";
    return r;
  }
  const long row1 = t.a() + t.b();
  const long row2 = t.c() + t.d();
  const long col1 = t.a() + t.c();
  const long total = t.total();
  const double log_denom = log_choose(total, col1);
  auto log_p = [&](long x) { return log_choose(row1, x) + log_choose(row2, col1 - x) - log_denom; };

  const double observed = log_p(t.a());
  const double cutoff = observed + std::log1p(kTieTolerance);
  double p = 0;
  for (long x = std::max(0L, col1 - row2); x <= std::min(row1, col1); ++x) {
    const double lp = log_p(x);
    if (lp <= cutoff) p += std::exp(lp);
  }
  r.p = std::clamp(p, 0.0, 1.0);
  const auto o = odds_ratio(t, cfg);
  r.odds_ratio = o.value;
  r.ci95_low = o.ci95_low;
  r.ci95_high = o.ci95_high;
  r.haldane = o.haldane;
  return r;
}

std::string_view method_name(ContingencyMethod m) noexcept {
  return m == ContingencyMethod::Fisher ? "fisher" : "chi2_yates";
}

ContingencyResult contingency_test(const Table2x2& t, const StatsConfig& cfg) {
  check_counts(t);
  ContingencyResult r;
  r.table = t;
  if (t.has_zero_margin()) {
    r.applicable = false;
    r.reason = "a row or column total is zero";
    r.method = ContingencyMethod::Fisher;
    return r;
  }
  r.odds = odds_ratio(t, cfg);
  if (t.min_expected() < 5.0) {
    r.method = ContingencyMethod::Fisher;
    r.p = fisher_exact(t, cfg).p;
    const long row1 = t.a() + t.b();
    const long col1 = t.a() + t.c();
    r.statistic = std::exp(log_choose(row1, t.a()) + log_choose(t.c() + t.d(), col1 - t.a()) -
                           log_choose(t.total(), col1));
  } else {
    const auto chi = chi2_yates(t);
    r.method = ContingencyMethod::Chi2Yates;
    r.statistic = chi.chi2;
    r.p = chi.p;
  }
  r.p_adjusted = r.p;
  return r;
}

}  // namespace screenbot::stats
