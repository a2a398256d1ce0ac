#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace icc {

// All domain errors carry a stable machine-readable kind tag so callers
// (notably the CLI) can report "error: <kind>: <detail>" on one line.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

  static Error invalid_dimension(const std::string& msg) { return Error("invalid-dimension", msg); }
  static Error invalid_argument(const std::string& msg) { return Error("invalid-argument", msg); }
  static Error budget_exceeded(const std::string& msg) { return Error("budget-exceeded", msg); }
  static Error unsupported_parameters(const std::string& msg) { return Error("unsupported-parameters", msg); }
  static Error degenerate_input(const std::string& msg) { return Error("degenerate-input", msg); }
  static Error parse(const std::string& msg) { return Error("parse-error", msg); }
  static Error io(const std::string& msg) { return Error("io-error", msg); }

 private:
  std::string kind_;
};

}  // namespace icc
