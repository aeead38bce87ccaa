#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fblow {

/// Mismatched rings, non-prime characteristic, malformed ring data.
class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not conform to the polynomial grammar.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownVariable, ExponentOverflow };

  ParseError(Kind kind, std::size_t position, const std::string& what)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        kind_(kind),
        position_(position) {}

  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// A resource limit (basis size, degree, wall clock) was hit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The unit ideal was passed where a proper ideal is required.
class UnitIdealError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An internal consistency check failed; indicates a bug or a malformed input
/// that slipped past validation.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fblow
