#pragma once

#include <stdexcept>
#include <string>

namespace prox {

/// Malformed input: bad labels, ragged tables, unknown generator kinds.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured size bound.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The algebraic object does not have the structure the operation requires
/// (not a group, not a subring, not a field, module law violated).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prox
