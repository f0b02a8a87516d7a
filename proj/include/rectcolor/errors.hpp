#pragma once

#include <stdexcept>
#include <string>

namespace rectcolor {

// Violated precondition or failed verification on a well-formed request.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured budget (vertex count, search nodes, trials) was exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal self-check failed. Never expected on valid input.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rectcolor
