#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sketchlab {

// A parameter or input violated a documented precondition. The message names
// the violated constraint verbatim, e.g. "1/epsilon > C(d/2, k-1)".
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A decoder could not produce an answer: the oracle was inconsistent, or an
// error-correcting code saw more corruption than it can repair.
class DecodeFailure : public std::runtime_error {
 public:
  DecodeFailure(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace sketchlab
