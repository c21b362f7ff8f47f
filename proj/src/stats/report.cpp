#include "screenbot/stats/report.hpp"

#include <map>

#include "screenbot/core/errors.hpp"
#include "screenbot/stats/contingency.hpp"
#include "screenbot/stats/inference.hpp"

namespace screenbot::stats {

using nlohmann::json;

namespace {

json applicability(const Applicability& a) {
  json j{{"applicable", a.applicable}};
  if (!a.applicable) j["reason"] = a.reason;
  return j;
}

json config_json(const StatsConfig& cfg) {
  return {{"alpha", cfg.alpha},
          {"exact_wilcoxon_threshold", cfg.exact_wilcoxon_threshold},
          {"two_sided", cfg.two_sided}};
}

// Statistic fields are null when the test does not apply.
template <class F>
void put(json& j, const Applicability& a, const char* key, F value) {
  j[key] = a.applicable ? json(value) : json(nullptr);
}

}  // namespace

json concordance_report(const std::vector<PairedRecord>& records, const StatsConfig& cfg) {
  cfg.validate();
  const auto pairs = score_pairs(records);
  const auto d = descriptives(pairs);

  json report;
  report["n"] = d.n;
  report["identical_count"] = d.identical_count;
  report["category_shift_count"] = category_shift(pairs);
  report["abs_diff"] = {{"median", d.abs_diff.median}, {"q1", d.abs_diff.q1},   {"q3", d.abs_diff.q3},
                        {"iqr", d.abs_diff.iqr},       {"mean", d.abs_diff.mean}, {"sd", d.abs_diff.sd}};
  report["signed_diff"] = {{"median", d.signed_diff.median}, {"mean", d.signed_diff.mean}};

  const auto w = wilcoxon_signed_rank(std::span<const ScorePair>(pairs), cfg);
  json wj = applicability(w);
  put(wj, w, "W", w.w_plus);
  put(wj, w, "W_minus", w.w_minus);
  wj["n_nonzero"] = w.n_nonzero;
  wj["method"] = w.exact ? "exact" : "normal";
  wj["z"] = (w.applicable && !w.exact) ? json(w.z) : json(nullptr);
  wj["p"] = w.p;
  report["wilcoxon"] = wj;

  const auto t = paired_t(std::span<const ScorePair>(pairs));
  json tj = applicability(t);
  put(tj, t, "t", t.t);
  put(tj, t, "df", t.df);
  put(tj, t, "p", t.p);
  report["paired_t"] = tj;

  std::vector<double> self, bot;
  for (const auto& p : pairs) {
    self.push_back(p.self_score);
    bot.push_back(p.bot_score);
  }
  const auto s = spearman_rho(self, bot);
  json sj = applicability(s);
  put(sj, s, "rho", s.rho);
  put(sj, s, "p", s.p);
  report["spearman"] = sj;

  const auto icc = icc31(std::span<const ScorePair>(pairs), cfg);
  json ij = applicability(icc);
  put(ij, icc, "value", icc.value);
  put(ij, icc, "ci95_low", icc.ci95_low);
  put(ij, icc, "ci95_high", icc.ci95_high);
  report["icc31"] = ij;

  report["config"] = config_json(cfg);
  return report;
}

json groups_report(const std::vector<PairedRecord>& records, std::string_view rating, std::string_view by,
                   const StatsConfig& cfg) {
  cfg.validate();
  const int idx = rating_index(rating);
  std::map<std::string, std::vector<double>> levels;
  std::size_t skipped = 0;
  for (const auto& r : records) {
    const auto level = category_field(r, by);
    if (level.empty() || !r.ratings[static_cast<std::size_t>(idx)]) {
      ++skipped;
      continue;
    }
    levels[level].push_back(*r.ratings[static_cast<std::size_t>(idx)]);
  }

  json report{{"rating", std::string(rating)}, {"by", std::string(by)}, {"skipped", skipped}};
  json groups = json::array();
  std::vector<std::vector<double>> samples;
  for (const auto& [level, values] : levels) {
    groups.push_back({{"level", level},
                      {"n", values.size()},
                      {"mean", mean(values)},
                      {"sd", sample_sd(values)}});
    samples.push_back(values);
  }
  report["groups"] = groups;

  if (samples.size() == 2) {
    const auto t = two_group_t(samples[0], samples[1]);
    json tj = applicability(t);
    tj["test"] = "student_t";
    put(tj, t, "t", t.t);
    put(tj, t, "df", t.df);
    put(tj, t, "p", t.p);
    report["test"] = tj;
  } else {
    const auto a = oneway_anova(samples);
    json aj = applicability(a);
    aj["test"] = "anova";
    put(aj, a, "F", a.f);
    put(aj, a, "df_between", a.df_between);
    put(aj, a, "df_within", a.df_within);
    put(aj, a, "p", a.p);
    report["test"] = aj;
  }
  report["config"] = config_json(cfg);
  return report;
}

json contingency_report(const std::vector<PairedRecord>& records, const std::vector<std::string>& factors,
                        const std::vector<std::string>& endpoints, const StatsConfig& cfg) {
  cfg.validate();
  if (factors.empty() || endpoints.empty()) throw DataError("need at least one factor and one endpoint");

  struct Entry {
    std::string factor, endpoint;
    ContingencyResult result;
    std::size_t n = 0;
  };
  std::vector<Entry> entries;
  for (const auto& factor : factors) {
    for (const auto& endpoint : endpoints) {
      Table2x2 table;
      std::size_t n = 0;
      for (const auto& r : records) {
        const auto f = binary_field(r, factor);
        const auto e = binary_field(r, endpoint);
        if (!f || !e) continue;
        ++table.n[*f ? 0 : 1][*e ? 0 : 1];
        ++n;
      }
      if (n == 0) {
        Entry empty{factor, endpoint, {}, 0};
        empty.result.applicable = false;
        empty.result.reason = "no records have both fields";
        entries.push_back(std::move(empty));
        continue;
      }
      entries.push_back({factor, endpoint, contingency_test(table, cfg), n});
    }
  }

  std::vector<double> ps;
  for (const auto& e : entries) {
    if (e.result.applicable) ps.push_back(e.result.p);
  }
  const auto adjusted = holm_bonferroni(ps);
  std::size_t k = 0;
  for (auto& e : entries) {
    if (e.result.applicable) e.result.p_adjusted = adjusted[k++];
  }

  json tests = json::array();
  for (const auto& e : entries) {
    const auto& r = e.result;
    const auto [f1, f2] = binary_labels(e.factor);
    const auto [e1, e2] = binary_labels(e.endpoint);
    json j = applicability(r);
    j["factor"] = e.factor;
    j["endpoint"] = e.endpoint;
    j["rows"] = {f1, f2};
    j["columns"] = {e1, e2};
    j["table"] = {{r.table.a(), r.table.b()}, {r.table.c(), r.table.d()}};
    j["n"] = e.n;
    j["method"] = method_name(r.method);
    put(j, r, "min_expected", e.n ? r.table.min_expected() : 0.0);
    put(j, r, "statistic", r.statistic);
    put(j, r, "odds_ratio", r.odds.value);
    put(j, r, "ci95_low", r.odds.ci95_low);
    put(j, r, "ci95_high", r.odds.ci95_high);
    put(j, r, "haldane", r.odds.haldane);
    put(j, r, "p", r.p);
    put(j, r, "p_adjusted", r.p_adjusted);
    tests.push_back(std::move(j));
  }
  return {{"family_size", ps.size()}, {"tests", tests}, {"config", config_json(cfg)}};
}

}  // namespace screenbot::stats
