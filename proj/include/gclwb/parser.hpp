#pragma once

#include <string_view>

#include "gclwb/ast.hpp"

namespace gclwb {

// Parses and validates a whole program (syntax, declaredness, types).
// Throws ParseError / TypeError with line:column positions.
Program parse_program(std::string_view text);

// Parses a single expression spanning the whole input. Used for predicates
// given on the command line and for proof-file lines. `allow_rat_div`
// admits '/' (exact rational division, proof chains only); `line_origin`
// offsets reported positions for callers that parse line by line.
ExprPtr parse_expression(std::string_view text, bool allow_rat_div = false, int line_origin = 1);

}  // namespace gclwb
