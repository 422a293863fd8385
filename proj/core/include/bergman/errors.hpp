#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text. line/column are 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column = 0)
      : Error(format(msg, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& msg, int line, int column) {
    std::string s = "parse error at line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s + ": " + msg;
  }
  int line_ = 0;
  int column_ = 0;
};

// A structure failed validation where a valid one was required.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An operation's stated precondition does not hold for the given arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An internal invariant broke (e.g. a move produced an invalid structure).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bergman
