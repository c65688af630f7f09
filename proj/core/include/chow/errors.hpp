#pragma once

#include <stdexcept>
#include <string>

namespace chow {

/// Malformed text input (expressions, rationals, strata literals, data files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed request with no mathematical answer: a class outside the
/// span of a basis, a dependent basis, inconsistent test-surface data.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chow
