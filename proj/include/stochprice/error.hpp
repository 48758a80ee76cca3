#pragma once

#include <stdexcept>
#include <string>

namespace stochprice {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is structurally wrong (e.g. a CSV without the requested column).
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A cell could not be read as a valid value. Carries the 1-based data row.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row)
      : Error(what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Not enough observations to perform the requested estimate.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace stochprice
