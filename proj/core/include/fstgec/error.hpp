#pragma once

#include <stdexcept>
#include <string>

namespace fstgec {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range caller input (empty sentence, beam < 1, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Mismatched symbol tables or inconsistent settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An FST violates the structural precondition of an algorithm
// (missing start state, cycle where acyclicity is required, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A bounded computation would exceed its limit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Text that does not follow an expected file format. Carries the 1-based
// line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Token sequences that cannot be decoded (dangling BPE continuation).
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fstgec
