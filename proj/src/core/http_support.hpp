#pragma once

#include <chrono>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>

#include <httplib.h>

#include "screenbot/core/errors.hpp"

namespace screenbot::detail {

inline std::unique_ptr<httplib::Client> make_http_client(const std::string& base_url,
                                                         std::chrono::milliseconds timeout) {
  auto client = std::make_unique<httplib::Client>(base_url);
  if (!client->is_valid()) throw ConfigError("invalid endpoint URL '" + base_url + "'");
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client->set_connection_timeout(secs.count(), usecs.count());
  client->set_read_timeout(secs.count(), usecs.count());
  client->set_write_timeout(secs.count(), usecs.count());
  return client;
}

// Reads a credential from the environment; throws ConfigError when unset or
// empty so misconfiguration surfaces before any network call.
inline std::string require_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (v == nullptr || *v == '\0') {
    throw ConfigError("credential environment variable " + name + " is not set");
  }
  return v;
}

inline bool retryable_status(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace screenbot::detail
