#pragma once

#include <string>
#include <string_view>

#include "fblow/polynomial.hpp"

namespace fblow {

/// Parses a polynomial over `ring`.
///
///   expr   := term (('+' | '-') term)*
///   term   := unary ('*' unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' integer)?
///   atom   := integer | identifier | '(' expr ')'
///
/// Juxtaposition is rejected: "2x" and "x(y+1)" are syntax errors.
/// Throws ParseError.
Polynomial parse(std::string_view text, const RingPtr& ring);

/// Canonical text form; parse(format(f)) == f.
inline std::string format(const Polynomial& f) { return f.str(); }

}  // namespace fblow
