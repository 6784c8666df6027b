#pragma once

#include <stdexcept>
#include <string>

namespace partseq {

// Malformed or out-of-contract input. The CLI maps this to exit code 3.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A result failed its own post-verification. Exit code 4.
class InternalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration refused because the instance is over budget.
class BudgetExceeded : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace partseq
