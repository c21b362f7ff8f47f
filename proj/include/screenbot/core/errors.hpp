#pragma once

#include <stdexcept>
#include <string>

namespace screenbot {

// Base for every error raised by the library. Callers that only need a
// message can catch this; the service maps subclasses to HTTP codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IncompleteResultError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedLanguageError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

class BusyError : public Error {
 public:
  using Error::Error;
};

class ClosedError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Failure talking to a generative or embedding backend. `attempts` counts
// every request made, including the failing one; `status` is the last HTTP
// status seen (0 for transport failures).
class BackendError : public Error {
 public:
  BackendError(const std::string& what, int attempts = 1, int status = 0)
      : Error(what), attempts_(attempts), status_(status) {}

  int attempts() const noexcept { return attempts_; }
  int status() const noexcept { return status_; }

 private:
  int attempts_;
  int status_;
};

class ScriptExhaustedError : public BackendError {
 public:
  explicit ScriptExhaustedError(const std::string& what) : BackendError(what, 1, 0) {}
};

class CancelledError : public Error {
 public:
  using Error::Error;
};

}  // namespace screenbot

namespace screenbot {
// Embedding-provider failures carry the same retry metadata.
using ProviderError = BackendError;
}  // namespace screenbot
