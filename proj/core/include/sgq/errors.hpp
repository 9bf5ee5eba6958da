#pragma once

#include <stdexcept>
#include <string>

namespace sgq {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Incompatible tensor shapes; message names the op and both shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; message carries file path and line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Domain-invariant violation (bad query, bad config, bad graph).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Non-finite value where a finite one is required (NaN loss, etc).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgq
