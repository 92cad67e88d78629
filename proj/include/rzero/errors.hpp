#pragma once

#include <stdexcept>
#include <string>

namespace rzero {

// Malformed or inconsistent input (bad document, dimension mismatch, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The requested mode cannot be used for this (n, dim X).
struct ModeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal invariant was violated; indicates a bug or a budget overrun.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rzero
