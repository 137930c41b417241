#pragma once

#include <stdexcept>
#include <string>

namespace cshv {

/// Malformed or out-of-contract input (bad label, non-up-set, broken document).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant failed on data that claimed to satisfy it (d∘d ≠ 0, non-monotone map).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An algorithm broke its own guarantee. Always a bug.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cshv
