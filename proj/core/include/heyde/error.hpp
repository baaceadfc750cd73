#pragma once

#include <stdexcept>

namespace heyde {

/// Malformed or out-of-range input (bad group spec, non-normalized masses, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal consistency check failed. This signals an arithmetic bug, never bad data.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace heyde
