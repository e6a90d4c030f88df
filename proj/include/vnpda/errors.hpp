#ifndef VNPDA_ERRORS_HPP
#define VNPDA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vnpda {

// Bad user input: malformed files, invalid flags, data that violates an
// operation's preconditions. The CLI maps these to exit code 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside a mathematical function's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Internal invariant broken by a caller inside the library. Exit code 2.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vnpda

#endif  // VNPDA_ERRORS_HPP
