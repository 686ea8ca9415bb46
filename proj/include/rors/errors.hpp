#ifndef RORS_ERRORS_HPP
#define RORS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rors {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Raised in strict mode; carries the first offending line.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class VerificationError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class EmptyDatasetError : public Error {
 public:
  EmptyDatasetError() : Error("empty dataset") {}
};

class IterationLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace rors

#endif
