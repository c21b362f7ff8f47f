#pragma once

#include <chrono>
#include <mutex>
#include <string>

namespace screenbot {

// Injected wherever wall or monotonic time is read, so transcripts and
// latency accounting can be made deterministic in tests.
class Clock {
 public:
  using utc_point = std::chrono::system_clock::time_point;
  using mono_point = std::chrono::steady_clock::time_point;

  virtual ~Clock() = default;
  virtual utc_point utc_now() = 0;
  virtual mono_point mono_now() = 0;
};

class SystemClock final : public Clock {
 public:
  utc_point utc_now() override { return std::chrono::system_clock::now(); }
  mono_point mono_now() override { return std::chrono::steady_clock::now(); }
};

// Every read advances by a fixed step. utc starts at 2025-03-01T00:00:00Z.
class SteppingClock final : public Clock {
 public:
  explicit SteppingClock(std::chrono::milliseconds utc_step = std::chrono::seconds(1),
                         std::chrono::milliseconds mono_step = std::chrono::milliseconds(0));

  utc_point utc_now() override;
  mono_point mono_now() override;

  // Moves both timelines forward without a read.
  void advance(std::chrono::milliseconds d);

 private:
  std::mutex mu_;
  utc_point utc_;
  mono_point mono_;
  std::chrono::milliseconds utc_step_;
  std::chrono::milliseconds mono_step_;
};

// RFC 3339 with millisecond precision, always UTC ("2025-03-01T00:00:00.000Z").
std::string format_utc(Clock::utc_point t);

// Inverse of format_utc; throws DataError on malformed input.
Clock::utc_point parse_utc(const std::string& s);

}  // namespace screenbot
