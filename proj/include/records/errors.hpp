#pragma once

#include <stdexcept>
#include <string>

namespace records {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed text input (permutations, probabilities).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Work would exceed a configured enumeration cap.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArrangementError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MergeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bad experiment configuration, detected before any work starts.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace records
