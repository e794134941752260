#pragma once

#include <string_view>
#include <vector>

#include "artin/polynomial.hpp"

namespace artin {

/// Parses polynomial text over `ring`: identifiers, `^` powers, optional `*`,
/// integer or `a/b` literals, parentheses, unary minus. Throws ParseError
/// carrying the 1-based line and column; `line` and `column` locate the start
/// of `text` inside a larger document.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, int line = 1,
                            int column = 1);

/// Comma-separated list of polynomials. Empty text yields an empty list.
std::vector<Polynomial> parse_polynomial_list(std::string_view text, const RingPtr& ring,
                                              int line = 1, int column = 1);

}  // namespace artin
