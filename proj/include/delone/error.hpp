#pragma once

#include <stdexcept>
#include <string>

namespace delone {

/// Violated precondition or malformed geometric input.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands of different ambient dimension.
class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Unreadable or schema-violating serialized artifact.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace delone
