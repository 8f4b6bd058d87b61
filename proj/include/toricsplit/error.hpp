#pragma once

#include <stdexcept>
#include <string>

namespace toricsplit {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
  Input = 1,
  NotSmooth = 2,
  NotComplete = 3,
  NotAmple = 4,
  Hypothesis = 5,
  Internal = 6,
  SearchExhausted = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace toricsplit
