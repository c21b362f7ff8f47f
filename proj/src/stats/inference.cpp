#include "screenbot/stats/inference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "distributions.hpp"
#include "screenbot/core/errors.hpp"

namespace screenbot::stats {

namespace {

template <class R>
R not_applicable(std::string reason) {
  R r;
  r.applicable = false;
  r.reason = std::move(reason);
  return r;
}

// Exact two-sided p for W+ given doubled ranks: the share of the 2^n sign
// assignments whose rank sum lies at least as far from its mean as observed.
double exact_signed_rank_p(const std::vector<long>& doubled, long observed) {
  const long total = std::accumulate(doubled.begin(), doubled.end(), 0L);
  std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
  counts[0] = 1.0;
  for (long r : doubled) {
    for (long s = total; s >= r; --s) counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - r)];
  }
  const long dev = std::labs(2 * observed - total);
  double hits = 0;
  for (long s = 0; s <= total; ++s) {
    if (std::labs(2 * s - total) >= dev) hits += counts[static_cast<std::size_t>(s)];
  }
  return std::min(1.0, std::ldexp(hits, -static_cast<int>(doubled.size())));
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs, const StatsConfig& cfg) {
  std::vector<double> nonzero;
  for (double d : diffs) {
    if (!std::isfinite(d)) throw DataError("non-finite difference");
    if (d != 0.0) nonzero.push_back(d);
  }
  if (nonzero.empty()) {
    auto r = not_applicable<WilcoxonResult>("all differences are zero");
    r.exact = true;
    return r;
  }
  std::vector<double> mags;
  for (double d : nonzero) mags.push_back(std::fabs(d));
  const auto ranks = average_ranks(mags);

  WilcoxonResult r;
  r.n_nonzero = nonzero.size();
  std::vector<long> doubled;
  long doubled_plus = 0;
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    const long dr = std::lround(2.0 * ranks[i]);
    doubled.push_back(dr);
    if (nonzero[i] > 0) {
      r.w_plus += ranks[i];
      doubled_plus += dr;
    } else {
      r.w_minus += ranks[i];
    }
  }

  const double n = static_cast<double>(r.n_nonzero);
  if (r.n_nonzero <= cfg.exact_wilcoxon_threshold) {
    r.exact = true;
    r.p = exact_signed_rank_p(doubled, doubled_plus);
    return r;
  }
  // Normal approximation with tie and continuity corrections.
  std::map<double, long> tie_sizes;
  for (double m : mags) ++tie_sizes[m];
  double tie_term = 0;
  for (const auto& [_, t] : tie_sizes) {
    const double tt = static_cast<double>(t);
    tie_term += tt * tt * tt - tt;
  }
  const double mu = n * (n + 1) / 4.0;
  const double var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term / 48.0;
  const double dev = r.w_plus - mu;
  const double corrected = std::max(0.0, std::fabs(dev) - 0.5);
  r.z = var > 0 ? std::copysign(corrected / std::sqrt(var), dev) : 0.0;
  r.p = dist::two_sided_normal_p(r.z);
  return r;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const ScorePair> pairs, const StatsConfig& cfg) {
  const auto d = differences(pairs);
  return wilcoxon_signed_rank(std::span<const double>(d), cfg);
}

TResult paired_t(std::span<const double> diffs) {
  if (diffs.size() < 2) return not_applicable<TResult>("needs at least two pairs");
  const double sd = sample_sd(diffs);
  if (sd == 0.0) return not_applicable<TResult>("differences have zero variance");
  TResult r;
  const double n = static_cast<double>(diffs.size());
  r.df = n - 1;
  r.t = mean(diffs) / (sd / std::sqrt(n));
  r.p = dist::two_sided_t_p(r.t, r.df);
  return r;
}

TResult paired_t(std::span<const ScorePair> pairs) {
  const auto d = differences(pairs);
  return paired_t(std::span<const double>(d));
}

TResult two_group_t(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty() || a.size() + b.size() < 3) {
    return not_applicable<TResult>("needs two non-empty groups and three observations");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean(a);
  const double mb = mean(b);
  double ss = 0;
  for (double v : a) ss += (v - ma) * (v - ma);
  for (double v : b) ss += (v - mb) * (v - mb);
  const double df = na + nb - 2;
  const double pooled = ss / df;
  if (pooled == 0.0) return not_applicable<TResult>("pooled variance is zero");
  TResult r;
  r.df = df;
  r.t = (ma - mb) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  r.p = dist::two_sided_t_p(r.t, r.df);
  return r;
}

CorrelationResult spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("spearman needs equal-length samples");
  if (x.size() < 3) return not_applicable<CorrelationResult>("needs at least three pairs");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return not_applicable<CorrelationResult>("a sample is constant");
  CorrelationResult r;
  r.n = x.size();
  r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(r.n) - 2;
  if (std::fabs(r.rho) == 1.0) {
    r.p = 0.0;
  } else {
    r.p = dist::two_sided_t_p(r.rho * std::sqrt(df / (1 - r.rho * r.rho)), df);
  }
  return r;
}

IccResult icc31(std::span<const double> first, std::span<const double> second, const StatsConfig& cfg) {
  if (first.size() != second.size()) throw DataError("icc needs equal-length ratings");
  if (first.size() < 2) return not_applicable<IccResult>("needs at least two subjects");
  // With two raters the two-way mean squares reduce to the spread of the
  // per-subject sums (rows) and of the per-subject differences (error).
  std::vector<double> sums, diffs;
  for (std::size_t i = 0; i < first.size(); ++i) {
    sums.push_back(first[i] + second[i]);
    diffs.push_back(second[i] - first[i]);
  }
  const double n = static_cast<double>(first.size());
  const double ms_sum = mean(sums);
  const double ms_diff = mean(diffs);
  double ss_s = 0, ss_d = 0;
  for (double v : sums) ss_s += (v - ms_sum) * (v - ms_sum);
  for (double v : diffs) ss_d += (v - ms_diff) * (v - ms_diff);

  IccResult r;
  r.ms_rows = ss_s / (2 * (n - 1));
  r.ms_error = ss_d / (2 * (n - 1));
  if (r.ms_rows == 0.0) return not_applicable<IccResult>("zero between-subject variance");
  if (r.ms_error == 0.0) {
    r.value = r.ci95_low = r.ci95_high = 1.0;
    return r;
  }
  r.value = (r.ms_rows - r.ms_error) / (r.ms_rows + r.ms_error);
  const double f0 = r.ms_rows / r.ms_error;
  const double df = n - 1;
  const double q = 1.0 - cfg.alpha / 2.0;
  const double fl = f0 / dist::f_quantile(q, df, df);
  const double fu = f0 * dist::f_quantile(q, df, df);
  r.ci95_low = (fl - 1) / (fl + 1);
  r.ci95_high = (fu - 1) / (fu + 1);
  return r;
}

IccResult icc31(std::span<const ScorePair> pairs, const StatsConfig& cfg) {
  std::vector<double> a, b;
  for (const auto& p : pairs) {
    a.push_back(p.self_score);
    b.push_back(p.bot_score);
  }
  return icc31(a, b, cfg);
}

AnovaResult oneway_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) return not_applicable<AnovaResult>("needs at least two groups");
  double n_total = 0, grand = 0;
  for (const auto& g : groups) {
    if (g.empty()) return not_applicable<AnovaResult>("a group is empty");
    n_total += static_cast<double>(g.size());
    grand += std::accumulate(g.begin(), g.end(), 0.0);
  }
  grand /= n_total;
  const double k = static_cast<double>(groups.size());
  if (n_total - k <= 0) return not_applicable<AnovaResult>("no within-group degrees of freedom");
  double ssb = 0, ssw = 0;
  for (const auto& g : groups) {
    const double m = mean(g);
    ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double v : g) ssw += (v - m) * (v - m);
  }
  if (ssw == 0.0) return not_applicable<AnovaResult>("zero within-group variance");
  AnovaResult r;
  r.df_between = k - 1;
  r.df_within = n_total - k;
  r.f = (ssb / r.df_between) / (ssw / r.df_within);
  r.p = dist::f_sf(r.f, r.df_between, r.df_within);
  return r;
}

std::vector<double> holm_bonferroni(std::span<const double> pvals) {
  for (double p : pvals) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p-value outside [0, 1]");
  }
  std::vector<std::size_t> order(pvals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return pvals[l] < pvals[r]; });
  std::vector<double> out(pvals.size());
  const double m = static_cast<double>(pvals.size());
  double running = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    running = std::max(running, std::min(1.0, (m - static_cast<double>(i)) * pvals[order[i]]));
    out[order[i]] = running;
  }
  return out;
}

}  // namespace screenbot::stats
