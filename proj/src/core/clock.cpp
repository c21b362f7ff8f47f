#include "screenbot/core/clock.hpp"

#include <cstdio>
#include <ctime>

#include "screenbot/core/errors.hpp"

namespace screenbot {

namespace {
// 2025-03-01T00:00:00Z
constexpr std::chrono::seconds kSteppingEpoch{1740787200};
}  // namespace

SteppingClock::SteppingClock(std::chrono::milliseconds utc_step,
                             std::chrono::milliseconds mono_step)
    : utc_(kSteppingEpoch), mono_(), utc_step_(utc_step), mono_step_(mono_step) {}

Clock::utc_point SteppingClock::utc_now() {
  std::lock_guard lock(mu_);
  auto t = utc_;
  utc_ += utc_step_;
  return t;
}

Clock::mono_point SteppingClock::mono_now() {
  std::lock_guard lock(mu_);
  auto t = mono_;
  mono_ += mono_step_;
  return t;
}

void SteppingClock::advance(std::chrono::milliseconds d) {
  std::lock_guard lock(mu_);
  utc_ += d;
  mono_ += d;
}

std::string format_utc(Clock::utc_point t) {
  using namespace std::chrono;
  const auto ms = duration_cast<milliseconds>(t.time_since_epoch()).count();
  std::time_t secs = static_cast<std::time_t>(ms / 1000);
  long rem = static_cast<long>(ms % 1000);
  if (rem < 0) {
    rem += 1000;
    --secs;
  }
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03ldZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, rem);
  return buf;
}

Clock::utc_point parse_utc(const std::string& s) {
  std::tm tm{};
  int ms = 0;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3dZ%n", &tm.tm_year, &tm.tm_mon,
                  &tm.tm_mday, &tm.tm_hour, &tm.tm_min, &tm.tm_sec, &ms, &consumed) != 7 ||
      static_cast<std::size_t>(consumed) != s.size()) {
    throw DataError("malformed UTC timestamp: '" + s + "'");
  }
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  const std::time_t secs = timegm(&tm);
  return Clock::utc_point(std::chrono::seconds(secs)) + std::chrono::milliseconds(ms);
}

}  // namespace screenbot
