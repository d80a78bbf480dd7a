#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confdec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class RuleError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

// Layer schemes.
class NoTopError : public Error {
 public:
  using Error::Error;
};

class NonUniqueTopError : public Error {
 public:
  using Error::Error;
};

class RankExceededError : public Error {
 public:
  using Error::Error;
};

class OracleBoundError : public Error {
 public:
  using Error::Error;
};

// Sorts and decomposition.
class UntypedSymbolError : public Error {
 public:
  using Error::Error;
};

class IncompatibleAttachmentError : public Error {
 public:
  using Error::Error;
};

class SignatureCollisionError : public Error {
 public:
  using Error::Error;
};

/// Raised by the COPS reader; carries a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace confdec
