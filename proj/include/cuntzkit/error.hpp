#pragma once

#include <stdexcept>
#include <string>

namespace cuntzkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that does not describe a valid object (bad interval, bad rational, ...).
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// Operands that live on different spaces.
class SpaceMismatch : public Error {
 public:
  SpaceMismatch() : Error("operands live on different spaces") {}
  using Error::Error;
};

/// An operation was called outside of its documented domain.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// Requested a chain for a set that does not admit one.
class NotChainable : public Error {
 public:
  using Error::Error;
};

/// JSON decoding failure; carries the offending JSON path.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace cuntzkit
