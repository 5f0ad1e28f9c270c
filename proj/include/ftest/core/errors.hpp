#pragma once

#include <stdexcept>
#include <string>

namespace ftest {

// Precondition / domain failures (zero ideal where nonzero is required, a
// non-pseudo-effective divisor passed to sigma, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mismatched ambient rings, malformed fans.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A user supplied object breaks a mathematical contract (superadditivity
// of a graded sequence, non-integral m*D, ...).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configurable budget was exhausted before the computation finished.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An identity that must hold by a theorem failed on computed data.  This
// always indicates a bug in the library.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ftest
