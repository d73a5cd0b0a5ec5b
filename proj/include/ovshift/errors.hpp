#pragma once

#include <stdexcept>
#include <string>

namespace ovshift {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `location` is "line N" for the text format and a
/// JSON pointer or byte offset for JSON.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& what)
      : Error(location.empty() ? what : location + ": " + what), location_(location) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// Well-formed input that breaks a type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Pruning removed every vertex.
class EmptyGraph : public Error {
 public:
  EmptyGraph() : Error("every vertex is stranded; the pruned graph is empty") {}
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NotPrimitive : public Error {
 public:
  using Error::Error;
};

/// Resource caps. These map to exit code 3 in the CLI.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class SizeCapExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class StateCapExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// Interval cover arithmetic landed too close to a boundary tie to decide.
class DegenerateCover : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace ovshift
