#pragma once

#include <stdexcept>
#include <string>

namespace f1kit {

// Precondition failures (bad degree, arity mismatch, unknown marking, ...)
// are reported as std::invalid_argument. InvariantError marks a broken
// internal identity, e.g. a cross-check between two computation routes.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace f1kit
