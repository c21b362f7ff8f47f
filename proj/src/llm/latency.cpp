#include "screenbot/llm/latency.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "screenbot/core/errors.hpp"

namespace screenbot::llm {

nlohmann::json to_json(const TurnLatency& latency) {
  return {{"gen_ms", latency.gen_ms}, {"tts_ms", latency.tts_ms}, {"total_ms", latency.total_ms}};
}

TurnLatency latency_from_json(const nlohmann::json& j) {
  TurnLatency l;
  l.gen_ms = j.value("gen_ms", 0.0);
  l.tts_ms = j.value("tts_ms", 0.0);
  l.total_ms = j.value("total_ms", 0.0);
  return l;
}

LatencySummary summarize_latencies(std::span<const double> samples_ms) {
  if (samples_ms.empty()) throw EmptyInputError("no latency samples");
  // 50 decimal digits hold any sum of millisecond-scale doubles exactly, so
  // the only rounding is the final conversion.
  using wide = boost::multiprecision::cpp_bin_float_50;
  wide sum = 0;
  wide sum_sq = 0;
  for (double x : samples_ms) {
    sum += x;
    sum_sq += wide(x) * x;
  }
  const wide n = samples_ms.size();
  LatencySummary s;
  s.n = samples_ms.size();
  s.mean = static_cast<double>(sum / n);
  if (s.n > 1) {
    wide var = (sum_sq - sum * sum / n) / (n - 1);
    if (var < 0) var = 0;
    s.sd = static_cast<double>(sqrt(var));
  }
  return s;
}

}  // namespace screenbot::llm
