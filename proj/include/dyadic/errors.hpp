#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// I(x, x) is undefined; callers that need delta(x, x) = 0 handle it themselves.
class EqualPoints : public Error {
 public:
  EqualPoints() : Error("points must be distinct") {}
};

/// A position, numerator or grid size exceeds the machine-word bounds.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class InvalidOrder : public Error {
 public:
  using Error::Error;
};

class InvalidP : public Error {
 public:
  using Error::Error;
};

class SupportsNotSeparated : public Error {
 public:
  SupportsNotSeparated() : Error("supports of phi and psi are not delta-separated") {}
};

class UnknownSuite : public Error {
 public:
  explicit UnknownSuite(const std::string& name) : Error("unknown suite: " + name) {}
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dyadic
