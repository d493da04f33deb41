#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cotton/polynomial.hpp"

namespace cotton {

/// Parses a polynomial expression over the given variables.
///
/// Grammar (whitespace insignificant):
///
///     expr   := ['+'|'-'] term (('+'|'-') term)*
///     term   := factor ('*' factor | '/' integer)*
///     factor := base ('^' integer)?
///     base   := name | integer | '(' expr ')'
///
/// so a rational literal "p/q" is the integer p divided by q. Division is
/// only by nonzero integer literals, which keeps every accepted expression a
/// polynomial. Throws ParseError with the offending offset.
Polynomial parse_expr(std::string_view source, const std::vector<std::string>& variables);

}  // namespace cotton
