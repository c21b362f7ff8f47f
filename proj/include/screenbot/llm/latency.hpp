#pragma once

#include <cstddef>
#include <span>

#include <json.hpp>

namespace screenbot::llm {

// Per-turn timings in milliseconds. total_ms covers the whole turn, so it
// is at least gen_ms.
struct TurnLatency {
  double gen_ms = 0.0;
  double tts_ms = 0.0;
  double total_ms = 0.0;

  bool operator==(const TurnLatency&) const = default;
};

nlohmann::json to_json(const TurnLatency& latency);
TurnLatency latency_from_json(const nlohmann::json& j);

struct LatencySummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1); 0 when n < 2
};

// Mean and sample standard deviation, correctly rounded from an extended
// precision accumulation. Throws EmptyInputError for an empty batch.
LatencySummary summarize_latencies(std::span<const double> samples_ms);

}  // namespace screenbot::llm
