#pragma once

#include <stdexcept>
#include <string>

namespace idet {

// Malformed input: bad indices, mismatched variable counts, parse failures.
// `code` is a stable short identifier (e.g. "H-not-symmetric"); line/column
// are 1-based and 0 when not tied to a source position.
class InputError : public std::runtime_error {
 public:
  explicit InputError(std::string code, const std::string& message,
                      int line = 0, int column = 0)
      : std::runtime_error(message),
        code_(std::move(code)),
        line_(line),
        column_(column) {}

  const std::string& code() const noexcept { return code_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string code_;
  int line_;
  int column_;
};

// A value was requested outside the set where it is defined (e.g. D_f off X).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A combinatorial cap was exceeded (minor enumeration).
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace idet
