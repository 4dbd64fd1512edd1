#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace triup {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A space was constructed with non-positive or non-finite weights.
class InvalidSpaceError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a dimension do not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Cube normalization was requested for a vector too close to the
/// null-cube cone |<x,x,x>| < epsilon.
class NearNullCubeError : public Error {
 public:
  using Error::Error;
};

/// An operation's stated precondition does not hold (non-normalized
/// state, negative uncertainty input, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An instance file failed to parse or validate. Messages are anchored
/// to a line/field where possible.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The optimizer found only degenerate states in every restart.
class DegenerateSearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace triup
