#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace touchard {

enum class ErrorKind {
  invalid_precision,
  domain,
  range,
  capacity,
  order,
  regime,
  step,
  precision_exhausted,
  solver,
  branch,
  series_consistency,
};

const char* to_string(ErrorKind kind) noexcept;

// Process exit code for an error kind: 2 for bad input (domain/range and
// friends), 3 for precision exhaustion, 4 for internal consistency failures.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when precision escalation hits its cap; carries the last two
// estimates in serialized form.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& what, std::string previous, std::string last)
      : Error(ErrorKind::precision_exhausted, what),
        previous_(std::move(previous)),
        last_(std::move(last)) {}

  const std::string& previous_estimate() const noexcept { return previous_; }
  const std::string& last_estimate() const noexcept { return last_; }

 private:
  std::string previous_;
  std::string last_;
};

}  // namespace touchard
