#pragma once

#include <stdexcept>
#include <string>

namespace histomerge {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad index, empty input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Summary file could not be parsed as the expected JSON document.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Summary file parsed but its content breaks a histogram/summary invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class UnsupportedVersionError : public Error {
 public:
  using Error::Error;
};

}  // namespace histomerge
