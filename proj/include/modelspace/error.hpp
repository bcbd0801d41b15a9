#pragma once

#include <stdexcept>
#include <string>

namespace modelspace {

// Malformed input text (germ files, sequence literals).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : std::runtime_error(line == 0 ? reason
                                     : "line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input is well formed but violates a precondition of the requested operation.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Explicit construction would exceed the configured node/cell ceiling.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction invariant failed (for instance d1*d2 != 0). Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::size_t kDefaultCeiling = 1'000'000;

}  // namespace modelspace
