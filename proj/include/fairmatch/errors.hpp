#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairmatch {

// Input text that cannot be parsed. line_number() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line_number)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + msg),
        line_(line_number) {}

  std::size_t line_number() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Dataset-level failures: empty after filtering, undersized split input,
// degenerate degree vectors, malformed cache files.
class DataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Metric evaluation failures: no probe interactions, degenerate
// score/count distributions.
class EvalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fairmatch
