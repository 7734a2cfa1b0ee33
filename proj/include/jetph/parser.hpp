#pragma once

#include <string>

#include "jetph/chart.hpp"

namespace jetph {

// Infix expression grammar over a chart:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' ['-'] integer]
//   atom   := integer | identifier | '(' expr ')'
// Identifiers resolve against the chart: a dependent field or parameter name,
// or field '_' derivative-letters for a jet coordinate (letters accepted in
// any order and canonicalized, so w_XY and w_YX parse to the same symbol).
// Because dependent names may contain underscores themselves (p_w), the split
// at the last underscore is tried only when the whole name does not resolve.
// Unresolved plain identifiers become opaque parameters.
Expression parse_expression(const std::string& text, const Chart& chart);

}  // namespace jetph
