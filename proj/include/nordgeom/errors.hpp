#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nordgeom {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two Scalars built over different parameter lists were combined.
class ParamMismatchError : public Error {
 public:
  using Error::Error;
};

// A product or parsed monomial exceeded the configured total-degree cap.
class DegreeOverflowError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Evaluation needed a value for a parameter that was not bound.
class UnboundParameterError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Raised when two independent computations of the same quantity disagree.
// This always indicates a bug, never bad input.
class InternalInconsistencyError : public Error {
 public:
  using Error::Error;
};

class DegeneratePlaneError : public Error {
 public:
  using Error::Error;
};

// Malformed input file, unknown preset, bad binding and similar usage errors.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace nordgeom
