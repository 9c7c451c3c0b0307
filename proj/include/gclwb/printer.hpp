#pragma once

#include <string>

#include "gclwb/ast.hpp"

namespace gclwb {

// Canonical ASCII rendering; parse(print(x)) is structurally equal to x.
std::string print_expr(const ExprPtr& e);
std::string print_stmt(const StmtPtr& s, int indent = 0);
std::string print_program(const Program& p);

}  // namespace gclwb
