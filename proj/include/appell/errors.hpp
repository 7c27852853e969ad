#pragma once

#include <stdexcept>
#include <string>

namespace appell {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact division by a zero polynomial / rational function, or evaluation at a pole.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain where the requested routine is valid.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The enclosure radius blew up; retry with more working bits.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace appell
